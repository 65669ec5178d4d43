use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::character::{character, root_of_unity};
use super::dft::{Direction, RadixPlan};
use crate::error::{Error, Result};
use crate::function::{Cyclotomic, ExactFunction, GridFunction, TestFunction};
use crate::padic::{arith, Ball, CosetGrid, PAdicScalar, PAdicVector};

/// How the per-cell sums are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// Radix-`p` transform along each axis.
    Fast,
    /// Direct summation over all cells; quadratic, used as a reference.
    Naive,
}

/// `F[f](ξ) = ∫ χ_p(ξ·x) f(x) dx`.
///
/// A function on `B_N(c)` with cells of radius `p^l` maps to one on `B_{-l}(0)`
/// with cells of radius `p^{-N'}`, `N' = max(N, log_p |c|_p)`.
pub fn fourier(f: &TestFunction) -> Result<TestFunction> {
    transform(f, Direction::Forward, Kernel::Fast)
}

/// `F^{-1}[g](x) = ∫ χ_p(-x·ξ) g(ξ) dξ`.
pub fn inverse_fourier(g: &TestFunction) -> Result<TestFunction> {
    transform(g, Direction::Inverse, Kernel::Fast)
}

pub fn fourier_naive(f: &TestFunction) -> Result<TestFunction> {
    transform(f, Direction::Forward, Kernel::Naive)
}

pub fn inverse_fourier_naive(g: &TestFunction) -> Result<TestFunction> {
    transform(g, Direction::Inverse, Kernel::Naive)
}

#[inline]
fn signed(t: u64, order: u64, dir: Direction) -> u64 {
    match dir {
        Direction::Forward => t,
        Direction::Inverse => (order - t) % order,
    }
}

fn dot_mod(a: &[u64], b: &[u64], order: u64) -> u64 {
    a.iter().zip(b).fold(0u128, |acc, (&x, &y)| (acc + x as u128 * y as u128) % order as u128) as u64
}

pub fn transform(f: &TestFunction, dir: Direction, kernel: Kernel) -> Result<TestFunction> {
    let grid = f.grid();
    let n = grid.dim();
    let side = grid.side() as usize;
    let len = grid.len();
    let mut data: Vec<Complex64> = match kernel {
        Kernel::Fast => {
            let plan = RadixPlan::new(grid.prime(), grid.digits())?;
            let mut data = f.values().to_vec();
            let mut line = alloc::vec![Complex64::new(0.0, 0.0); side];
            let mut stride = len;
            for _axis in 0..n {
                let outer = len / stride;
                stride /= side;
                for o in 0..outer {
                    for i in 0..stride {
                        let base = o * side * stride + i;
                        for (t, v) in line.iter_mut().enumerate() {
                            *v = data[base + t * stride];
                        }
                        plan.process(&mut line, dir);
                        for (t, v) in line.iter().enumerate() {
                            data[base + t * stride] = *v;
                        }
                    }
                }
            }
            data
        }
        Kernel::Naive => {
            let order = grid.side();
            let idx: Vec<Vec<u64>> = (0..len).map(|i| grid.multi_index(i)).collect();
            (0..len)
                .map(|j| {
                    f.values()
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| v * root_of_unity(signed(dot_mod(&idx[j], &idx[k], order), order, dir), order))
                        .sum()
                })
                .collect()
        }
    };
    let vol = grid.cell_measure_f64();
    for v in data.iter_mut() {
        *v *= vol;
    }
    let out_grid = CosetGrid::centered(grid.prime(), n, -grid.cell_exp(), -grid.support_exp())?;
    let out = GridFunction::from_values(out_grid, data)?;
    if grid.is_centered() {
        return Ok(out);
    }
    modulate(&out, grid.center(), dir)
}

/// Multiply a centered function of `ξ` by `χ_p(±ξ·c)`, refining cells so the
/// character is constant on each.
fn modulate(g: &TestFunction, c: &PAdicVector, dir: Direction) -> Result<TestFunction> {
    let p = g.prime();
    let reach = c.norm_exponent().unwrap_or(i64::MIN);
    let cell = g.grid().cell_exp().min(-reach);
    let grid = CosetGrid::new(g.support().clone(), cell)?;
    let fine = g.resample(&grid)?;
    let k = grid.digits();
    let order = grid.side();
    // ξ = p^{-N} j on this grid, so ξ_a c_a = j_a · p^{-N} c_a, and the phase is
    // j_a · w_a / p^k with w_a = p^{k-N} c_a reduced mod p^k
    let scale = arith::p_pow(p, k as i64 - grid.support_exp());
    let w: Vec<u64> = c
        .components()
        .iter()
        .map(|ca| arith::reduce(&(ca * &scale), p, k).expect("phase denominator bounded by grid"))
        .collect();
    let values = fine
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let t = dot_mod(&grid.multi_index(i), &w, order);
            v * root_of_unity(signed(t, order, dir), order)
        })
        .collect();
    GridFunction::from_values(grid, values)
}

/// `F[f](ξ)` at a single point, summed straight from the definition with exact
/// character phases. Independent of the grid transforms.
pub fn fourier_at(f: &TestFunction, xi: &PAdicVector, dir: Direction) -> Result<Complex64> {
    let grid = f.grid();
    if let Some(e) = xi.norm_exponent() {
        if e > -grid.cell_exp() {
            return Ok(Complex64::new(0.0, 0.0));
        }
    }
    let sxi = if dir == Direction::Forward { xi.clone() } else { xi.neg() };
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, v) in f.values().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        acc += v * character(&sxi, &grid.representative(i))?.value;
    }
    Ok(acc * grid.cell_measure_f64())
}

/// Exact transform of a function on a centered grid.
pub fn fourier_exact(f: &ExactFunction) -> Result<ExactFunction> {
    transform_exact(f, Direction::Forward)
}

pub fn inverse_fourier_exact(g: &ExactFunction) -> Result<ExactFunction> {
    transform_exact(g, Direction::Inverse)
}

fn transform_exact(f: &ExactFunction, dir: Direction) -> Result<ExactFunction> {
    let grid = f.grid();
    if !grid.is_centered() {
        return Err(Error::ExactUnsupported("a grid centered at the origin"));
    }
    let p = grid.prime();
    let len = grid.len();
    let order = grid.side();
    let m = grid.digits();
    let idx: Vec<Vec<u64>> = (0..len).map(|i| grid.multi_index(i)).collect();
    let vol = grid.cell_measure();
    let mut values = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = Cyclotomic::zero(p);
        for (k, v) in f.values().iter().enumerate() {
            let t = signed(dot_mod(&idx[j], &idx[k], order), order, dir);
            let term = v.mul(&Cyclotomic::root(p, m, t, 0));
            acc = acc.checked_add(&term).ok_or(Error::ExactUnsupported("cell values of one √p parity"))?;
        }
        values.push(acc.scale(&vol));
    }
    let out_grid = CosetGrid::centered(p, grid.dim(), -grid.cell_exp(), -grid.support_exp())?;
    GridFunction::from_values(out_grid, values)
}

/// `x ↦ f(Ax + b)` for diagonal `A`.
pub fn diagonal_pullback(f: &TestFunction, diag: &[PAdicScalar], b: &PAdicVector) -> Result<TestFunction> {
    let grid = f.grid();
    let p = grid.prime();
    if diag.len() != grid.dim() {
        return Err(Error::DimensionMismatch(grid.dim(), diag.len()));
    }
    grid.center().check_compatible(b)?;
    let mut v = Vec::with_capacity(diag.len());
    for a in diag {
        if a.prime() != p {
            return Err(Error::PrimeMismatch(p.get(), a.prime().get()));
        }
        v.push(a.valuation().map_err(|_| Error::SingularMatrix)?);
    }
    let support = v.iter().map(|vj| grid.support_exp() + vj).max().unwrap();
    let cell = v.iter().map(|vj| grid.cell_exp() + vj).min().unwrap();
    let center: Vec<_> = grid
        .center()
        .components()
        .iter()
        .zip(b.components())
        .zip(diag)
        .map(|((c, bj), a)| (c - bj) / a.value())
        .collect();
    let target = CosetGrid::new(Ball::new(support, PAdicVector::new(p, center)?), cell)?;
    let mut values = Vec::with_capacity(target.len());
    for i in 0..target.len() {
        let x = target.representative(i);
        let y: Vec<_> = x
            .components()
            .iter()
            .zip(diag)
            .zip(b.components())
            .map(|((xj, a), bj)| xj * a.value() + bj)
            .collect();
        values.push(f.evaluate(&PAdicVector::new(p, y)?)?);
    }
    GridFunction::from_values(target, values)
}

/// Outcome of comparing both sides of the affine change-of-variables law.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineLawReport {
    pub holds: bool,
    pub max_dev: f64,
    pub cells: usize,
}

/// Check `F[f(A·+b)](ξ) = |det A|^{-1} χ_p(-A^{-1}b·ξ) F[f](A^{-1}ξ)` on a grid
/// fine enough for both sides. `A` is diagonal, given by its entries.
pub fn affine_fourier_law_check(
    f: &TestFunction,
    diag: &[PAdicScalar],
    b: &PAdicVector,
    tol: f64,
) -> Result<AffineLawReport> {
    let p = f.prime();
    let lhs = fourier(&diagonal_pullback(f, diag, b)?)?;
    let ff = fourier(f)?;
    let v: Vec<i64> = diag.iter().map(|a| a.valuation().expect("checked by pullback")).collect();
    let shift: Vec<_> = b.components().iter().zip(diag).map(|(bj, a)| bj / a.value()).collect();
    let shift = PAdicVector::new(p, shift)?;
    let mut cell = lhs.grid().cell_exp();
    for &vj in &v {
        cell = cell.min(ff.grid().cell_exp() - vj);
    }
    if let Some(e) = shift.norm_exponent() {
        cell = cell.min(-e);
    }
    let radius = v
        .iter()
        .map(|vj| ff.grid().support_exp() - vj)
        .max()
        .unwrap()
        .max(lhs.grid().support_exp());
    let grid = CosetGrid::centered(p, f.dim(), radius, cell)?;
    let det_inv: f64 = v.iter().map(|&vj| Float::powi(p.get() as f64, vj as i32)).product();
    let minus_shift = shift.neg();
    let mut max_dev: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..grid.len() {
        let xi = grid.representative(i);
        let left = lhs.evaluate(&xi)?;
        let pulled: Vec<_> = xi.components().iter().zip(diag).map(|(x, a)| x / a.value()).collect();
        let chi = character(&minus_shift, &xi)?.value;
        let right = ff.evaluate(&PAdicVector::new(p, pulled)?)? * chi * det_inv;
        max_dev = max_dev.max((left - right).norm());
        scale = scale.max(left.norm());
    }
    Ok(AffineLawReport { holds: max_dev <= tol * scale, max_dev, cells: grid.len() })
}
