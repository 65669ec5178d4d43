use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::padic::{arith, Ball, CosetGrid, PAdicVector};
use crate::prime::Prime;

/// A value that can live in a cell of a [`GridFunction`].
pub trait CellValue: Clone + core::fmt::Debug {
    fn zero(p: Prime) -> Self;
}

/// A locally constant, compactly supported function on `Q_p^n`: one value per cell
/// of a [`CosetGrid`], zero outside the grid's ball.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    pub(crate) grid: CosetGrid,
    pub(crate) values: Vec<T>,
}

impl<T: CellValue> GridFunction<T> {
    pub fn from_values(grid: CosetGrid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::CoefficientCount { expected: grid.len(), got: values.len() });
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: CosetGrid) -> Self {
        let z = T::zero(grid.prime());
        let values = vec![z; grid.len()];
        GridFunction { grid, values }
    }

    pub fn from_cells(grid: CosetGrid, f: impl FnMut(usize) -> T) -> Self {
        let values = (0..grid.len()).map(f).collect();
        GridFunction { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> &CosetGrid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_parts(self) -> (CosetGrid, Vec<T>) {
        (self.grid, self.values)
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.grid.prime()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn support(&self) -> &Ball {
        self.grid.ball()
    }

    pub fn map<U: CellValue>(&self, f: impl FnMut(&T) -> U) -> GridFunction<U> {
        GridFunction { grid: self.grid.clone(), values: self.values.iter().map(f).collect() }
    }

    /// Value at `x`: the entry of the cell holding `x`, zero off the support.
    pub fn evaluate(&self, x: &PAdicVector) -> Result<T> {
        Ok(match self.grid.index_of(x)? {
            Some(i) => self.values[i].clone(),
            None => T::zero(self.prime()),
        })
    }

    /// Re-express on `target`, which must be at least as fine. Values of `self`
    /// outside `target`'s ball are dropped.
    pub fn resample(&self, target: &CosetGrid) -> Result<Self> {
        if target == &self.grid {
            return Ok(self.clone());
        }
        let map = target.map_from(&self.grid)?;
        let z = T::zero(self.prime());
        let values = map
            .into_iter()
            .map(|m| match m {
                Some(i) => self.values[i].clone(),
                None => z.clone(),
            })
            .collect();
        Ok(GridFunction { grid: target.clone(), values })
    }

    /// Both functions on the grid over the smallest ball containing both supports,
    /// with the finer of the two cell sizes.
    pub fn common_refinement(&self, other: &Self) -> Result<(Self, Self)> {
        let grid = common_grid(&self.grid, &other.grid)?;
        Ok((self.resample(&grid)?, other.resample(&grid)?))
    }

    /// `x ↦ f(p^γ x - a)`.
    pub fn affine_pullback(&self, gamma: i64, a: &PAdicVector) -> Result<Self> {
        self.grid.center().check_compatible(a)?;
        let raw = self.grid.center().add(a).scale_p(-gamma);
        let support = self.grid.support_exp() + gamma;
        let cell = self.grid.cell_exp() + gamma;
        rebase(raw, support, cell, self.values.clone())
    }

    /// `x ↦ f(x - b)`.
    pub fn translate(&self, b: &PAdicVector) -> Result<Self> {
        self.grid.center().check_compatible(b)?;
        let raw = self.grid.center().add(b);
        rebase(raw, self.grid.support_exp(), self.grid.cell_exp(), self.values.clone())
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> Result<Self> {
        let side = self.grid.side();
        let values = (0..self.grid.len())
            .map(|i| {
                let k: Vec<u64> =
                    self.grid.multi_index(i).iter().map(|&k| (side - k) % side).collect();
                self.values[self.grid.flat_index(&k)].clone()
            })
            .collect();
        rebase(self.grid.center().neg(), self.grid.support_exp(), self.grid.cell_exp(), values)
    }

    /// The same values on the same shape of grid moved to the origin,
    /// i.e. `x ↦ f(x + c)` where `c` is the support center.
    pub fn centered(&self) -> Result<Self> {
        let grid = CosetGrid::centered(self.prime(), self.dim(), self.grid.support_exp(), self.grid.cell_exp())?;
        Ok(GridFunction { grid, values: self.values.clone() })
    }
}

/// Grid over the hull of two supports with the finer cell size.
pub fn common_grid(a: &CosetGrid, b: &CosetGrid) -> Result<CosetGrid> {
    let hull = a.ball().hull(b.ball())?;
    CosetGrid::new(hull, a.cell_exp().min(b.cell_exp()))
}

/// Build a function whose values are indexed relative to an arbitrary (non-canonical)
/// center: entry `k` is the value on the cell around `raw + p^{-N} k`.
pub(crate) fn rebase<T: CellValue>(
    raw: PAdicVector,
    support: i64,
    cell: i64,
    values: Vec<T>,
) -> Result<GridFunction<T>> {
    let p = raw.prime();
    let grid = CosetGrid::new(Ball::new(support, raw.clone()), cell)?;
    let up = arith::p_pow(p, support);
    let side = grid.side();
    let offsets: Vec<u64> = raw
        .components()
        .iter()
        .zip(grid.center().components())
        .map(|(r, c): (&BigRational, &BigRational)| {
            arith::reduce(&((r - c) * &up), p, grid.digits()).expect("raw center lies in the ball")
        })
        .collect();
    if offsets.iter().all(|&t| t == 0) {
        return Ok(GridFunction { grid, values });
    }
    let mut out = values.clone();
    for (i, v) in values.into_iter().enumerate() {
        let k: Vec<u64> = grid
            .multi_index(i)
            .iter()
            .zip(&offsets)
            .map(|(&k, &t)| ((k as u128 + t as u128) % side as u128) as u64)
            .collect();
        out[grid.flat_index(&k)] = v;
    }
    Ok(GridFunction { grid, values: out })
}
