use num_complex::Complex64;

use super::symbol::{Symbol, SymbolCell};
use crate::error::{Error, Result};
use crate::fourier::{fourier, inverse_fourier};
use crate::function::TestFunction;
use crate::padic::CosetGrid;

/// Frequency cells where a tabulated symbol is missing are tolerated when the
/// transform there is below this fraction of its maximum.
pub const COVERAGE_TOL: f64 = 1e-12;

/// `A f = F^{-1}[𝒜 · F[f]]` for a Lizorkin `f`.
///
/// `A` commutes with translations, so the work is done on the copy of `f`
/// moved to the origin, which keeps the frequency grid as coarse as possible.
pub fn apply(sym: &Symbol, f: &TestFunction) -> Result<TestFunction> {
    if !f.is_lizorkin() {
        return Err(Error::NotLizorkin { integral: f.integrate() });
    }
    let centered = f.centered()?;
    let mut fhat = fourier(&centered)?;
    if let Some(r) = sym.resolution() {
        if r < fhat.grid().cell_exp() {
            let grid = CosetGrid::new(fhat.support().clone(), r)?;
            fhat = fhat.resample(&grid)?;
        }
    }
    let cells = sym.on_grid(fhat.grid())?;
    let scale = fhat.sup_norm();
    let (grid, mut values) = fhat.into_parts();
    for (i, (v, c)) in values.iter_mut().zip(&cells).enumerate() {
        *v = match c {
            SymbolCell::Value(s) => *v * s,
            // F[f] vanishes on the cell at the origin for Lizorkin f
            SymbolCell::Origin => Complex64::new(0.0, 0.0),
            SymbolCell::Uncovered => {
                if v.norm() > COVERAGE_TOL * scale {
                    return Err(Error::Coverage(grid.cell_ball(i)));
                }
                Complex64::new(0.0, 0.0)
            }
        };
    }
    let out = inverse_fourier(&TestFunction::from_values(grid, values)?)?;
    if f.grid().is_centered() {
        Ok(out)
    } else {
        out.translate(f.grid().center())
    }
}

/// The Taibleson operator `D^β`, symbol `|ξ|_p^β`.
pub fn taibleson(beta: Complex64, f: &TestFunction) -> Result<TestFunction> {
    apply(&Symbol::Power(beta), f)
}

/// The transposed operator, symbol `𝒜(-ξ)`.
pub fn transpose(sym: &Symbol) -> Symbol {
    Symbol::reflected(sym.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{Ball, PAdicVector};
    use crate::prime::Prime;
    use crate::pseudodiff::TabulatedSymbol;
    use crate::wavelets::{wavelet, WaveletIndex};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn taibleson_scales_wavelets() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for pp in [2u64, 3, 5] {
            for gamma in -2..=2 {
                let idx = WaveletIndex::random(&mut rng, p(pp), gamma, &[1], 2).unwrap();
                let w = wavelet(&idx).unwrap();
                let out = taibleson(c(1.3), &w).unwrap();
                let lambda = (pp as f64).powf(1.3 * (1 - gamma) as f64);
                assert!(out.sup_distance(&w.scale(c(lambda))).unwrap() < 1e-10 * lambda, "{}", idx);
            }
        }
    }

    #[test]
    fn powers_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = wavelet(&WaveletIndex::random(&mut rng, p(3), 0, &[2], 1).unwrap()).unwrap();
        let b = wavelet(&WaveletIndex::random(&mut rng, p(3), -1, &[1], 2).unwrap()).unwrap();
        let f = a.add(&b.scale(Complex64::new(0.5, -2.0))).unwrap();
        let two = taibleson(c(0.4), &taibleson(c(0.6), &f).unwrap()).unwrap();
        let one = taibleson(c(1.0), &f).unwrap();
        assert!(two.sup_distance(&one).unwrap() < 1e-10);
        let back = taibleson(c(-1.0), &one).unwrap();
        assert!(back.sup_distance(&f).unwrap() < 1e-10);
    }

    #[test]
    fn commutes_with_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let w = wavelet(&WaveletIndex::random(&mut rng, p(2), 1, &[2], 0).unwrap()).unwrap();
        let b = PAdicVector::from_ratios(p(2), &[(5, 16)]).unwrap();
        let lhs = taibleson(c(0.7), &w.translate(&b).unwrap()).unwrap();
        let rhs = taibleson(c(0.7), &w).unwrap().translate(&b).unwrap();
        assert!(lhs.sup_distance(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_non_lizorkin_input() {
        let f = TestFunction::indicator(&Ball::centered(p(2), 1, 0));
        assert!(matches!(taibleson(c(1.0), &f), Err(Error::NotLizorkin { .. })));
    }

    #[test]
    fn tabulated_symbol_needs_coverage() {
        // table on 1 ≤ |ξ| ≤ 2; F[θ] for γ = -2 sits at |ξ| = 8
        let t = TabulatedSymbol::from_symbol(&Symbol::power_re(1.0), p(2), 1, 0, 1, -1).unwrap();
        let sym = Symbol::Tabulated(t);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let far = wavelet(&WaveletIndex::random(&mut rng, p(2), -2, &[1], 0).unwrap()).unwrap();
        assert!(matches!(apply(&sym, &far), Err(Error::Coverage(_))));
        let near = wavelet(&WaveletIndex::random(&mut rng, p(2), 0, &[1], 0).unwrap()).unwrap();
        let out = apply(&sym, &near).unwrap();
        assert!(out.sup_distance(&near.scale(c(2.0))).unwrap() < 1e-12);
    }

    #[test]
    fn transpose_matches_reflection() {
        let t = TabulatedSymbol::from_fn(p(3), 1, -1, 0, -2, |xi| {
            Complex64::new(1.0 + num_traits::ToPrimitive::to_f64(&(xi.components()[0].numer() % 7i32)).unwrap(), 0.5)
        })
        .unwrap();
        let sym = Symbol::Tabulated(t);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = wavelet(&WaveletIndex::random(&mut rng, p(3), 2, &[2], 1).unwrap()).unwrap();
        // (A^T f)(x) = (A f(-·))(-x)
        let lhs = apply(&transpose(&sym), &f).unwrap();
        let rhs = apply(&sym, &f.reflect().unwrap()).unwrap().reflect().unwrap();
        assert!(lhs.sup_distance(&rhs).unwrap() < 1e-12);
    }
}
