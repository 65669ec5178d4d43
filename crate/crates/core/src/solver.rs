//! `A u = f` by wavelet diagonalization: every index in the span is an
//! eigenfunction, so `u = Σ c_idx / λ_idx Θ_idx` with `c = analyze(f)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::TestFunction;
use crate::pseudodiff::{apply, eigenvalue, Symbol};
use crate::wavelets::{analyze, synthesize, CoefficientMap, WaveletIndex};

/// `|λ| < EIGEN_FLOOR · max |λ|` counts as a zero eigenvalue.
pub const EIGEN_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProblem {
    symbol: Symbol,
    rhs: TestFunction,
    indices: Vec<WaveletIndex>,
    eigenvalues: Vec<Complex64>,
    tolerance: f64,
}

impl SpectralProblem {
    /// Fails unless `rhs` is Lizorkin, every index is an eigenfunction of the
    /// symbol and `tolerance` is positive.
    pub fn new(symbol: Symbol, rhs: TestFunction, indices: Vec<WaveletIndex>, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidTolerance(tolerance));
        }
        if indices.is_empty() {
            return Err(Error::EmptyRange);
        }
        if !rhs.is_lizorkin() {
            return Err(Error::NotLizorkin { integral: rhs.integrate() });
        }
        let eigenvalues = indices.iter().map(|i| eigenvalue(&symbol, i)).collect::<Result<_>>()?;
        Ok(SpectralProblem { symbol, rhs, indices, eigenvalues, tolerance })
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn rhs(&self) -> &TestFunction {
        &self.rhs
    }

    pub fn indices(&self) -> &[WaveletIndex] {
        &self.indices
    }

    /// `λ_idx = 𝒜(-p^γ s)` in the order of [`indices`](Self::indices).
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub solution: TestFunction,
    /// Coefficients of the solution in the wavelet basis.
    pub coefficients: CoefficientMap,
    /// `‖A u - f‖_2`.
    pub residual: f64,
    /// Indices excluded for a vanishing eigenvalue.
    pub dropped: Vec<WaveletIndex>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub l2: f64,
    pub sup: f64,
}

pub fn solve(problem: &SpectralProblem) -> Result<Solution> {
    let rhs = &problem.rhs;
    let coeffs = analyze(rhs, &problem.indices)?;
    let floor = EIGEN_FLOOR * problem.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let noise = EIGEN_FLOOR * rhs.l2_norm();
    let mut dropped = Vec::new();
    let mut offending = Vec::new();
    let mut energy = 0.0;
    let mut out = CoefficientMap::new();
    for (idx, lambda) in problem.indices.iter().zip(&problem.eigenvalues) {
        let c = coeffs[idx];
        if lambda.norm() <= floor {
            dropped.push(idx.clone());
            if c.norm() > noise {
                offending.push(idx.clone());
                energy += c.norm_sqr();
            }
        } else {
            out.insert(idx.clone(), c / lambda);
        }
    }
    let energy = energy.sqrt();
    if energy > problem.tolerance {
        return Err(Error::NonInvertible { indices: offending, energy });
    }
    let solution = if out.is_empty() { TestFunction::zeros(rhs.grid().clone()) } else { synthesize(&out)? };
    let residual = verify(problem, &solution)?.l2;
    if residual > problem.tolerance {
        return Err(Error::ResidualExceeded { residual, tolerance: problem.tolerance });
    }
    Ok(Solution { solution, coefficients: out, residual, dropped })
}

/// Residuals of `A u - f`.
pub fn verify(problem: &SpectralProblem, solution: &TestFunction) -> Result<ResidualReport> {
    let au = apply(&problem.symbol, solution)?;
    Ok(ResidualReport { l2: au.l2_distance(&problem.rhs)?, sup: au.sup_distance(&problem.rhs)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{Ball, CosetGrid};
    use crate::prime::Prime;
    use crate::pseudodiff::TabulatedSymbol;
    use crate::wavelets::{enumerate_indices, wavelet};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn span(pp: u64) -> Vec<WaveletIndex> {
        enumerate_indices(&Ball::centered(p(pp), 1, 1), -1, 2, &[1]).unwrap()
    }

    fn combo(idx: &[WaveletIndex]) -> TestFunction {
        let mut m = CoefficientMap::new();
        for (k, i) in idx.iter().enumerate().step_by(3) {
            m.insert(i.clone(), Complex64::new(1.0 + k as f64, -0.5 * k as f64));
        }
        synthesize(&m).unwrap()
    }

    #[test]
    fn eigen_rhs_inverts_the_eigenvalue() {
        let idx = span(3);
        let target = idx[4].clone();
        let rhs = wavelet(&target).unwrap();
        let prob = SpectralProblem::new(Symbol::power_re(1.5), rhs.clone(), idx, 1e-10).unwrap();
        let sol = solve(&prob).unwrap();
        let want = 3f64.powf(-1.5 * (1 - target.gamma) as f64);
        assert!((sol.coefficients[&target] - c(want)).norm() < 1e-12);
        assert!(sol.solution.sup_distance(&rhs.scale(c(want))).unwrap() < 1e-12);
        assert!(sol.residual < 1e-10);
        assert!(sol.dropped.is_empty());
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let rhs = TestFunction::zeros(CosetGrid::centered(p(2), 1, 1, -2).unwrap());
        let prob = SpectralProblem::new(Symbol::power_re(1.0), rhs, span(2), 1e-10).unwrap();
        let sol = solve(&prob).unwrap();
        assert_eq!(sol.solution.sup_norm(), 0.0);
        assert_eq!(sol.residual, 0.0);
    }

    #[test]
    fn zero_eigenvalue_guard() {
        // symbol vanishing on |ξ| = 1 and equal to |ξ| elsewhere in the annulus
        let t = TabulatedSymbol::from_fn(p(2), 1, -2, 2, -3, |xi| {
            if xi.norm_exponent() == Some(0) {
                c(0.0)
            } else {
                Symbol::power_re(1.0).eval(xi).unwrap()
            }
        })
        .unwrap();
        let idx = span(2);
        let rhs = combo(&idx);
        let prob = SpectralProblem::new(Symbol::Tabulated(t), rhs, idx, 1e-10).unwrap();
        match solve(&prob) {
            Err(Error::NonInvertible { indices, energy }) => {
                assert!(energy > 0.1);
                assert!(indices.iter().all(|i| i.gamma == 1));
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn verify_reports_perturbation() {
        let idx = span(2);
        let rhs = combo(&idx);
        let prob = SpectralProblem::new(Symbol::power_re(2.0), rhs.clone(), idx.clone(), 1e-10).unwrap();
        let sol = solve(&prob).unwrap();
        let r = verify(&prob, &sol.solution).unwrap();
        assert!(r.l2 < 1e-10 && r.sup < 1e-10);
        let eps = 1e-3;
        let bumped = sol.solution.add(&wavelet(&idx[1]).unwrap().scale(c(eps))).unwrap();
        let lambda = prob.eigenvalues()[1].norm();
        let r = verify(&prob, &bumped).unwrap();
        assert!((r.l2 - eps * lambda).abs() < 0.1 * eps * lambda);
        let zero = TestFunction::zeros(rhs.grid().clone());
        assert!((verify(&prob, &zero).unwrap().l2 - rhs.l2_norm()).abs() < 1e-12);
    }

    #[test]
    fn truncated_span_reports_residual() {
        let idx = span(3);
        let rhs = combo(&idx);
        let prob = SpectralProblem::new(Symbol::power_re(1.0), rhs, idx[..idx.len() / 2].to_vec(), 1e-10).unwrap();
        assert!(matches!(solve(&prob), Err(Error::ResidualExceeded { .. })));
    }

    #[test]
    fn construction_checks() {
        let idx = span(2);
        let omega = TestFunction::omega(p(2), 1);
        assert!(matches!(
            SpectralProblem::new(Symbol::power_re(1.0), omega, idx.clone(), 1e-10),
            Err(Error::NotLizorkin { .. })
        ));
        let rhs = combo(&idx);
        assert!(matches!(SpectralProblem::new(Symbol::power_re(1.0), rhs.clone(), idx, 0.0), Err(Error::InvalidTolerance(_))));
        let t = TabulatedSymbol::from_fn(p(2), 1, -2, 2, -3, |xi| c(xi.components()[0].numer().bits() as f64)).unwrap();
        assert!(matches!(
            SpectralProblem::new(Symbol::Tabulated(t), rhs, span(2), 1e-10),
            Err(Error::NotEigen { .. })
        ));
    }
}
