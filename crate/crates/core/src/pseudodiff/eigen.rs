use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gamma::p_cpow;
use super::operator::apply;
use super::symbol::{Symbol, SymbolCell};
use crate::error::{Error, Result};
use crate::function::TestFunction;
use crate::padic::{arith, Ball, CosetGrid, PAdicVector};
use crate::prime::Prime;
use crate::wavelets::{eigen_frequency, frequency_ball, wavelet, WaveletIndex};

/// Relative tolerance for "the symbol is constant on the frequency ball".
pub const EIGEN_TOL: f64 = 1e-12;

/// Outcome of [`eigen_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    pub is_eigen: bool,
    /// `𝒜(-p^γ s)` when the wavelet is an eigenfunction.
    pub eigenvalue: Option<Complex64>,
    /// A cell of the frequency ball where the symbol differs from its value at
    /// `-p^γ s`.
    pub witness: Option<Ball>,
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= EIGEN_TOL * a.norm().max(b.norm()).max(1.0)
}

/// Is `Θ_idx` an eigenfunction of the operator with symbol `sym`?
///
/// `F[Θ]` is supported on `B_{-γ}(-p^γ s)`, which never holds the origin, so the
/// answer is whether `𝒜` is constant on that ball.
pub fn eigen_check(sym: &Symbol, idx: &WaveletIndex) -> Result<EigenReport> {
    let lambda = sym.eval(&eigen_frequency(idx))?;
    let ball = frequency_ball(idx);
    let constant = EigenReport { is_eigen: true, eigenvalue: Some(lambda), witness: None };
    let r = match sym.resolution() {
        None => return Ok(constant),
        Some(r) => r,
    };
    let grid = CosetGrid::new(ball.clone(), r.min(ball.radius_exp()))?;
    for (i, c) in sym.on_grid(&grid)?.into_iter().enumerate() {
        match c {
            SymbolCell::Value(v) if close(v, lambda) => {}
            SymbolCell::Value(_) => {
                return Ok(EigenReport { is_eigen: false, eigenvalue: None, witness: Some(grid.cell_ball(i)) })
            }
            SymbolCell::Origin => unreachable!("the frequency ball avoids the origin"),
            SymbolCell::Uncovered => return Err(Error::Coverage(grid.cell_ball(i))),
        }
    }
    Ok(constant)
}

/// Like [`eigen_check`] but an error when the wavelet is not an eigenfunction.
pub fn eigenvalue(sym: &Symbol, idx: &WaveletIndex) -> Result<Complex64> {
    let r = eigen_check(sym, idx)?;
    match (r.eigenvalue, r.witness) {
        (Some(l), _) => Ok(l),
        (None, witness) => Err(Error::NotEigen { index: idx.clone(), witness }),
    }
}

fn random_point(rng: &mut ChaCha8Rng, p: Prime, n: usize, e: i64) -> PAdicVector {
    let lead = rng.gen_range(0..n);
    let pp = p.get() as i64;
    let comps = (0..n)
        .map(|j| {
            let ej = if j == lead { e } else { e - rng.gen_range(0..=3) };
            // unit u with |u|_p = 1, then |p^{-e_j} u|_p = p^{e_j}
            let mut u = rng.gen_range(1..pp * pp * pp);
            if u % pp == 0 {
                u += 1;
            }
            if j != lead && rng.gen_bool(0.25) {
                u = 0;
            }
            BigRational::from_integer(BigInt::from(u)) * arith::p_pow(p, ej)
        })
        .collect();
    PAdicVector::new(p, comps).expect("prime and dimension agree")
}

/// Sampled test of `𝒜(p^k ξ) = p^{-kβ} 𝒜(ξ)` with a fixed seed. Tabulated symbols
/// are only sampled inside their annulus.
pub fn homogeneity_check(sym: &Symbol, p: Prime, n: usize, degree: Complex64, samples: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let (lo, hi) = annulus(sym).unwrap_or((-4, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..samples {
        let e = rng.gen_range(lo..=hi);
        let e2 = rng.gen_range(lo..=hi);
        let k = e - e2;
        let xi = random_point(&mut rng, p, n, e);
        let lhs = sym.eval(&xi.scale_p(k))?;
        let rhs = p_cpow(p, -degree * k as f64) * sym.eval(&xi)?;
        if !close(lhs, rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Norm range on which every tabulated factor is defined.
fn annulus(sym: &Symbol) -> Option<(i64, i64)> {
    match sym {
        Symbol::Tabulated(t) => Some((t.inner_exp(), t.outer_exp())),
        Symbol::Product(a, b) => match (annulus(a), annulus(b)) {
            (Some((a0, a1)), Some((b0, b1))) => Some((a0.max(b0), a1.min(b1))),
            (x, y) => x.or(y),
        },
        Symbol::Reciprocal(a) | Symbol::Reflected(a) => annulus(a),
        _ => None,
    }
}

/// For a symbol homogeneous of degree `β` and a wavelet with `|s_j|_p = p`, the
/// eigenvalue at scale `γ` is `p^{-βγ}` times the one at scale `0`.
pub fn corollary3_check(sym: &Symbol, degree: Complex64, idx: &WaveletIndex) -> Result<EigenReport> {
    if idx.s.m().iter().any(|&m| m != 1) {
        return Err(Error::InvalidFrequency(alloc::format!(
            "scaling law needs |s_j|_p = p on every axis, got exponents {:?}",
            idx.s.m()
        )));
    }
    if !homogeneity_check(sym, idx.prime(), idx.dim(), degree, 64)? {
        return Err(Error::NotHomogeneous(degree));
    }
    let base = WaveletIndex::new(0, idx.s.clone(), idx.a.clone())?;
    let r = eigen_check(sym, &base)?;
    Ok(EigenReport {
        eigenvalue: r.eigenvalue.map(|l| l * p_cpow(idx.prime(), -degree * idx.gamma as f64)),
        ..r
    })
}

/// `A Θ` next to `λ Θ`, for checking an eigenvalue through the operator itself.
#[derive(Debug, Clone, PartialEq)]
pub struct ApplyComparison {
    pub eigenvalue: Complex64,
    pub output: TestFunction,
    /// `‖A Θ - λ Θ‖_2`.
    pub l2_residual: f64,
    /// `‖A Θ - λ Θ‖_∞`.
    pub sup_residual: f64,
}

pub fn apply_and_compare(sym: &Symbol, idx: &WaveletIndex) -> Result<ApplyComparison> {
    let lambda = eigenvalue(sym, idx)?;
    let theta = wavelet(idx)?;
    let output = apply(sym, &theta)?;
    let expected = theta.scale(lambda);
    Ok(ApplyComparison {
        eigenvalue: lambda,
        l2_residual: output.l2_distance(&expected)?,
        sup_residual: output.sup_distance(&expected)?,
        output,
    })
}

/// Eigenvalues for many indices; fails on the first non-eigenfunction.
pub fn eigenvalues(sym: &Symbol, indices: &[WaveletIndex]) -> Result<Vec<Complex64>> {
    indices.iter().map(|i| eigenvalue(sym, i)).collect()
}
