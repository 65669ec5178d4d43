use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::prime::Prime;

/// Distance below which `α` counts as sitting on a pole `μ_j = 2πij / ln p`.
pub const POLE_TOL: f64 = 1e-12;

/// `Γ_p^{(n)}(α)` together with its argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub alpha: Complex64,
    pub value: Complex64,
}

/// Index `j` and distance of the pole `μ_j = 2πij / ln p` nearest to `α`.
pub fn nearest_pole(p: Prime, alpha: Complex64) -> (i64, f64) {
    let period = 2.0 * core::f64::consts::PI / p.ln();
    let j = (alpha.im / period).round();
    let mu = Complex64::new(0.0, j * period);
    (j as i64, (alpha - mu).norm())
}

/// Fails with a pole error when `1 - p^{-α}` vanishes.
pub fn check_pole(p: Prime, alpha: Complex64) -> Result<()> {
    let (j, d) = nearest_pole(p, alpha);
    if d <= POLE_TOL * (1.0 + alpha.norm()) {
        return Err(Error::Pole { alpha, j });
    }
    Ok(())
}

/// `p^z`.
pub(crate) fn p_cpow(p: Prime, z: Complex64) -> Complex64 {
    (z * p.ln()).exp()
}

/// `Γ_p^{(n)}(α) = (1 - p^{α-n}) / (1 - p^{-α})`.
pub fn gamma_p(p: Prime, n: usize, alpha: Complex64) -> Result<GammaValue> {
    check_pole(p, alpha)?;
    let one = Complex64::new(1.0, 0.0);
    let num = one - p_cpow(p, alpha - n as f64);
    let den = one - p_cpow(p, -alpha);
    Ok(GammaValue { alpha, value: num / den })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let g = gamma_p(p(2), 1, Complex64::new(2.0, 0.0)).unwrap().value;
        assert!((g - Complex64::new(-4.0 / 3.0, 0.0)).norm() < 1e-15);
        for (pp, n) in [(2u64, 1usize), (3, 1), (5, 2)] {
            let g = gamma_p(p(pp), n, Complex64::new(n as f64, 0.0)).unwrap().value;
            assert!(g.norm() < 1e-15);
        }
    }

    #[test]
    fn poles_name_their_index() {
        let mu = Complex64::new(0.0, 2.0 * 2.0 * core::f64::consts::PI / 3f64.ln());
        assert_eq!(gamma_p(p(3), 1, mu), Err(Error::Pole { alpha: mu, j: 2 }));
        assert!(matches!(gamma_p(p(3), 1, Complex64::new(0.0, 0.0)), Err(Error::Pole { j: 0, .. })));
        assert!(gamma_p(p(3), 1, mu + 1e-6).is_ok());
    }
}
