use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{arith, Ball, PAdicVector};
use crate::error::{Error, Result};
use crate::prime::Prime;

/// Upper bound on the number of cells a grid may hold.
pub const MAX_CELLS: usize = 1 << 24;

/// The canonical cover of a ball `B_N^n(c)` by the `p^{n(N-l)}` disjoint balls of
/// radius `p^l`.
///
/// Cells are addressed by a multi-index `k ∈ [0, p^{N-l})^n`: cell `k` is the
/// ball of radius `p^l` around `c + p^{-N} k`. The flat index is row-major with
/// the first coordinate slowest, and this is the canonical cell order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetGrid {
    ball: Ball,
    cell_exp: i64,
    digits: u32,
    side: u64,
    len: usize,
}

/// Build the canonical cover of `ball` at cell exponent `l`.
pub fn canonical_cover(ball: &Ball, l: i64) -> Result<CosetGrid> {
    CosetGrid::new(ball.clone(), l)
}

impl CosetGrid {
    pub fn new(ball: Ball, cell_exp: i64) -> Result<Self> {
        let radius = ball.radius_exp();
        if cell_exp > radius {
            return Err(Error::InvalidRefinement { cell: cell_exp, radius });
        }
        let n = ball.dim();
        let too_large = Error::GridTooLarge { digits: radius - cell_exp, dim: n };
        let digits = u32::try_from(radius - cell_exp).map_err(|_| too_large.clone())?;
        let side = ball.prime().checked_pow(digits).ok_or_else(|| too_large.clone())?;
        let mut len: usize = 1;
        for _ in 0..n {
            len = len
                .checked_mul(usize::try_from(side).map_err(|_| too_large.clone())?)
                .filter(|&l| l <= MAX_CELLS)
                .ok_or_else(|| too_large.clone())?;
        }
        Ok(CosetGrid { ball, cell_exp, digits, side, len })
    }

    /// Grid on `B_N^n(0)`.
    pub fn centered(p: Prime, n: usize, support_exp: i64, cell_exp: i64) -> Result<Self> {
        CosetGrid::new(Ball::centered(p, n, support_exp), cell_exp)
    }

    #[inline]
    pub fn ball(&self) -> &Ball {
        &self.ball
    }
    #[inline]
    pub fn prime(&self) -> Prime {
        self.ball.prime()
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.ball.dim()
    }
    /// `N`, the radius exponent of the support ball.
    #[inline]
    pub fn support_exp(&self) -> i64 {
        self.ball.radius_exp()
    }
    /// `l`, the radius exponent of each cell.
    #[inline]
    pub fn cell_exp(&self) -> i64 {
        self.cell_exp
    }
    /// `N - l`, digits per axis.
    #[inline]
    pub fn digits(&self) -> u32 {
        self.digits
    }
    /// `p^{N-l}`, cells per axis.
    #[inline]
    pub fn side(&self) -> u64 {
        self.side
    }
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn center(&self) -> &PAdicVector {
        self.ball.center()
    }

    pub fn is_centered(&self) -> bool {
        self.center().is_zero()
    }

    /// Same shape with another support ball of equal radius.
    pub fn with_ball(&self, ball: Ball) -> Result<Self> {
        CosetGrid::new(ball, self.cell_exp)
    }

    /// Haar measure `p^{nl}` of a single cell.
    pub fn cell_measure(&self) -> BigRational {
        arith::p_pow(self.prime(), self.cell_exp * self.dim() as i64)
    }

    pub fn cell_measure_f64(&self) -> f64 {
        num_traits::Float::powi(self.prime().get() as f64, (self.cell_exp * self.dim() as i64) as i32)
    }

    pub fn multi_index(&self, mut idx: usize) -> Vec<u64> {
        let n = self.dim();
        let side = self.side as usize;
        let mut k = vec![0u64; n];
        for j in (0..n).rev() {
            k[j] = (idx % side) as u64;
            idx /= side;
        }
        k
    }

    pub fn flat_index(&self, k: &[u64]) -> usize {
        k.iter().fold(0usize, |acc, &kj| acc * self.side as usize + kj as usize)
    }

    /// `c + p^{-N} k` for the cell's multi-index `k`.
    pub fn representative(&self, idx: usize) -> PAdicVector {
        let p = self.prime();
        let scale = arith::p_pow(p, -self.support_exp());
        let comps = self
            .center()
            .components()
            .iter()
            .zip(self.multi_index(idx))
            .map(|(c, k)| c + BigRational::from_integer(k.into()) * &scale)
            .collect();
        PAdicVector::new(p, comps).expect("dimension preserved")
    }

    /// All representatives in canonical order.
    pub fn representatives(&self) -> Vec<PAdicVector> {
        (0..self.len).map(|i| self.representative(i)).collect()
    }

    pub fn cell_ball(&self, idx: usize) -> Ball {
        Ball::new(self.cell_exp, self.representative(idx))
    }

    /// Base-`p` digits of each coordinate of the cell, least significant first.
    /// Digit `i` of axis `j` is the digit of `x_j - c_j` at position `i - N`.
    pub fn cell_digits(&self, idx: usize) -> Vec<Vec<u64>> {
        let p = self.prime().get();
        self.multi_index(idx)
            .into_iter()
            .map(|mut k| {
                (0..self.digits)
                    .map(|_| {
                        let d = k % p;
                        k /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    /// Inverse of [`cell_digits`](Self::cell_digits).
    pub fn index_from_digits(&self, digits: &[Vec<u64>]) -> Result<usize> {
        if digits.len() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), digits.len()));
        }
        let p = self.prime().get();
        let mut k = Vec::with_capacity(self.dim());
        for axis in digits {
            if axis.len() != self.digits as usize {
                return Err(Error::CoefficientCount { expected: self.digits as usize, got: axis.len() });
            }
            let mut v = 0u64;
            for &d in axis.iter().rev() {
                if d >= p {
                    return Err(Error::InvalidDigit { digit: d, p });
                }
                v = v * p + d;
            }
            k.push(v);
        }
        Ok(self.flat_index(&k))
    }

    /// Flat index of the cell containing `x`, `None` outside the support ball.
    pub fn index_of(&self, x: &PAdicVector) -> Result<Option<usize>> {
        self.center().check_compatible(x)?;
        let p = self.prime();
        let up = arith::p_pow(p, self.support_exp());
        let mut k = Vec::with_capacity(self.dim());
        for (xj, cj) in x.components().iter().zip(self.center().components()) {
            let u = (xj - cj) * &up;
            match arith::reduce(&u, p, self.digits) {
                Some(v) => k.push(v),
                None => return Ok(None),
            }
        }
        Ok(Some(self.flat_index(&k)))
    }

    /// For each cell along axis `j` of `self`, the cell of `src` along the same axis
    /// containing it. `self` must be at least as fine as `src`.
    pub(crate) fn axis_map(&self, src: &CosetGrid, j: usize) -> Vec<Option<u64>> {
        debug_assert!(self.cell_exp <= src.cell_exp);
        let p = self.prime();
        let e = src.support_exp() - self.support_exp();
        let q_exp = (-e).max(0) as u32;
        let m_exp = q_exp + src.digits;
        let q = p.checked_pow(q_exp).expect("fits");
        let m = p.checked_pow(m_exp).expect("modulus bounded by target side");
        let d = &self.center().components()[j] - &src.center().components()[j];
        let w_rat = d * arith::p_pow(p, src.support_exp() + q_exp as i64);
        let w = match arith::reduce(&w_rat, p, m_exp) {
            Some(w) => w,
            None => return vec![None; self.side as usize],
        };
        let step_exp = e.max(0);
        let step = if step_exp >= m_exp as i64 { 0 } else { p.checked_pow(step_exp as u32).unwrap() % m };
        (0..self.side)
            .map(|k| {
                let t = ((w as u128 + step as u128 * k as u128) % m as u128) as u64;
                if t % q == 0 {
                    Some(t / q)
                } else {
                    None
                }
            })
            .collect()
    }

    /// For each cell of `self`, the flat index of the cell of `src` containing it.
    pub fn map_from(&self, src: &CosetGrid) -> Result<Vec<Option<usize>>> {
        self.center().check_compatible(src.center())?;
        if self.cell_exp > src.cell_exp {
            return Err(Error::InvalidRefinement { cell: self.cell_exp, radius: src.cell_exp });
        }
        let axes: Vec<Vec<Option<u64>>> = (0..self.dim()).map(|j| self.axis_map(src, j)).collect();
        let src_side = src.side as usize;
        let mut out = Vec::with_capacity(self.len);
        for idx in 0..self.len {
            let k = self.multi_index(idx);
            let mut flat = 0usize;
            let mut inside = true;
            for (j, &kj) in k.iter().enumerate() {
                match axes[j][kj as usize] {
                    Some(s) => flat = flat * src_side + s as usize,
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            out.push(if inside { Some(flat) } else { None });
        }
        Ok(out)
    }

    /// Per-axis `log_p |x_j|_p` on each axis cell, `None` for the cell containing `0`.
    pub(crate) fn axis_norm_exponents(&self, j: usize) -> Vec<Option<i64>> {
        let p = self.prime().get();
        let cj = &self.center().components()[j];
        if !cj.is_zero() {
            let e = -arith::valuation(cj, self.prime()).unwrap();
            return vec![Some(e); self.side as usize];
        }
        (0..self.side)
            .map(|k| {
                if k == 0 {
                    None
                } else {
                    let mut v = 0i64;
                    let mut r = k;
                    while r % p == 0 {
                        r /= p;
                        v += 1;
                    }
                    Some(self.support_exp() - v)
                }
            })
            .collect()
    }

    /// `log_p |x|_p` on each cell (constant there), `None` for the cell containing `0`.
    pub fn cell_norm_exponents(&self) -> Vec<Option<i64>> {
        let axes: Vec<Vec<Option<i64>>> = (0..self.dim()).map(|j| self.axis_norm_exponents(j)).collect();
        (0..self.len)
            .map(|idx| {
                self.multi_index(idx)
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &k)| axes[j][k as usize])
                    .max()
            })
            .collect()
    }

    /// Index of the cell containing the origin, if it lies in the support ball.
    pub fn origin_cell(&self) -> Option<usize> {
        if self.is_centered() {
            Some(0)
        } else {
            None
        }
    }
}
