use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::basis::wavelet_exact;
use super::index::{FrequencyIndex, TranslationIndex, WaveletIndex};
use crate::error::{Error, Result};
use crate::fourier::root_of_unity;
use crate::function::{Cyclotomic, ExactFunction, TestFunction};
use crate::padic::{arith, PAdicVector};
use crate::prime::Prime;

/// Refinement of `θ_s(x) = χ_p(sx) Ω(|x|_p)` (or of `Ω` itself) over the `p^m`
/// balls `B_{-m}(a)`, `a = 0, …, p^m - 1`:
///
/// `θ_s(x) = p^{-m/2} Σ_a h̃_a Ω(|p^{-m} x - p^{-m} a|_p)`, `h̃_a = p^{m/2} e^{2πi {sa}_p}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoScaleRelation {
    p: Prime,
    m: u32,
    s: Option<FrequencyIndex>,
    /// `h̃_a = p^{m/2} ζ^{phase_a}` with `ζ = e^{2πi/p^m}`.
    phases: Vec<u64>,
}

/// Two-scale coefficients of `θ_s` over `p^m` cells; `s = None` gives the scaling
/// function `Ω`, with every coefficient equal to `p^{m/2}`.
pub fn two_scale_coefficients(p: Prime, m: u32, s: Option<&FrequencyIndex>) -> Result<TwoScaleRelation> {
    let order = p.checked_pow(m).ok_or(Error::GridTooLarge { digits: m as i64, dim: 1 })?;
    let phases = match s {
        None => alloc::vec![0; order as usize],
        Some(s) => {
            if s.prime() != p {
                return Err(Error::PrimeMismatch(p.get(), s.prime().get()));
            }
            if s.dim() != 1 {
                return Err(Error::DimensionMismatch(1, s.dim()));
            }
            let ms = s.max_m();
            if ms > m {
                return Err(Error::InvalidFrequency(alloc::format!(
                    "|s|_p = p^{} is not constant on cells of radius p^-{}",
                    ms,
                    m
                )));
            }
            // {s a}_p = S a / p^{m_s} = S a p^{m - m_s} / p^m
            let w = s.numerators()[0] as u128 * p.checked_pow(m - ms).unwrap() as u128;
            (0..order).map(|a| ((w * a as u128) % order as u128) as u64).collect()
        }
    };
    Ok(TwoScaleRelation { p, m, s: s.cloned(), phases })
}

impl TwoScaleRelation {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Phase numerators over `p^m`, indexed by `a`.
    pub fn phases(&self) -> &[u64] {
        &self.phases
    }

    /// `h̃_a` as complex numbers.
    pub fn coefficients(&self) -> Vec<Complex64> {
        let order = self.phases.len() as u64;
        let amp = Float::powf(self.p.get() as f64, self.m as f64 / 2.0);
        self.phases.iter().map(|&t| root_of_unity(t, order) * amp).collect()
    }

    /// `h̃_a` in exact form.
    pub fn exact_coefficients(&self) -> Vec<Cyclotomic> {
        self.phases.iter().map(|&t| Cyclotomic::root(self.p, self.m, t, self.m as i64)).collect()
    }

    /// The left-hand side, built straight from its definition.
    pub fn target_exact(&self) -> Result<ExactFunction> {
        match &self.s {
            None => Ok(ExactFunction::exact_indicator(&crate::padic::Ball::centered(self.p, 1, 0))),
            Some(s) => wavelet_exact(&WaveletIndex::new(0, s.clone(), TranslationIndex::zero(self.p, 1))?),
        }
    }

    /// The right-hand side, summed from dilated and translated copies of `Ω`.
    pub fn reconstruct_exact(&self) -> Result<ExactFunction> {
        let omega = ExactFunction::exact_indicator(&crate::padic::Ball::centered(self.p, 1, 0));
        let norm = Cyclotomic::root(self.p, 0, 0, -(self.m as i64));
        let mut acc: Option<ExactFunction> = None;
        for (a, h) in self.exact_coefficients().iter().enumerate() {
            let shift = shift_for(self.p, self.m, a as u64)?;
            let term = omega.affine_pullback(-(self.m as i64), &shift)?.exact_scale(&h.mul(&norm));
            acc = Some(match acc {
                None => term,
                Some(f) => f.exact_add(&term)?.ok_or(Error::ExactUnsupported("terms of one √p parity"))?,
            });
        }
        Ok(acc.expect("at least one term"))
    }

    /// Floating-point version of [`reconstruct_exact`](Self::reconstruct_exact).
    pub fn reconstruct(&self) -> Result<TestFunction> {
        let omega = TestFunction::omega(self.p, 1);
        let norm = Float::powf(self.p.get() as f64, -(self.m as f64) / 2.0);
        let mut acc: Option<TestFunction> = None;
        for (a, h) in self.coefficients().iter().enumerate() {
            let shift = shift_for(self.p, self.m, a as u64)?;
            let term = omega.affine_pullback(-(self.m as i64), &shift)?.scale(h * norm);
            acc = Some(match acc {
                None => term,
                Some(f) => f.add(&term)?,
            });
        }
        Ok(acc.expect("at least one term"))
    }

    /// Whether both sides agree exactly as functions on `Q_p`.
    pub fn verify_exact(&self) -> Result<bool> {
        self.reconstruct_exact()?.exact_equals(&self.target_exact()?)
    }
}

fn shift_for(p: Prime, m: u32, a: u64) -> Result<PAdicVector> {
    let v = num_rational::BigRational::from_integer(a.into()) * arith::p_pow(p, -(m as i64));
    PAdicVector::new(p, alloc::vec![v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn scaling_function_coefficients() {
        let r = two_scale_coefficients(p(3), 1, None).unwrap();
        for h in r.coefficients() {
            assert!((h - Complex64::new(3f64.sqrt(), 0.0)).norm() < 1e-15);
        }
        assert!(r.verify_exact().unwrap());
    }

    #[test]
    fn kozyrev_coefficients_for_p3() {
        let s = FrequencyIndex::from_digits(p(3), vec![vec![1]]).unwrap();
        let r = two_scale_coefficients(p(3), 1, Some(&s)).unwrap();
        for (k, h) in r.coefficients().iter().enumerate() {
            let t = 2.0 * core::f64::consts::PI * k as f64 / 3.0;
            let want = Complex64::new(t.cos(), t.sin()) * 3f64.sqrt();
            assert!((h - want).norm() < 1e-14);
        }
        assert!(r.verify_exact().unwrap());
    }

    #[test]
    fn reconstruction_for_three_quarters() {
        // s = 3/4 = p^{-2}(1 + 1·2)
        let s = FrequencyIndex::from_digits(p(2), vec![vec![1, 1]]).unwrap();
        let r = two_scale_coefficients(p(2), 2, Some(&s)).unwrap();
        assert!(r.verify_exact().unwrap());
        let target = r.target_exact().unwrap().to_test_function();
        let grid = crate::padic::CosetGrid::centered(p(2), 1, 0, -2).unwrap();
        let lhs = r.reconstruct().unwrap().resample(&grid).unwrap();
        let rhs = target.resample(&grid).unwrap();
        assert!(lhs.sup_distance(&rhs).unwrap() < 1e-14);
    }

    #[test]
    fn wrong_coefficients_fail() {
        let s = FrequencyIndex::from_digits(p(2), vec![vec![1, 1]]).unwrap();
        let mut r = two_scale_coefficients(p(2), 2, Some(&s)).unwrap();
        r.phases[1] = (r.phases[1] + 1) % 4;
        assert!(!r.verify_exact().unwrap());
    }

    #[test]
    fn frequency_too_fine_for_m() {
        let s = FrequencyIndex::from_digits(p(2), vec![vec![1, 1]]).unwrap();
        assert!(two_scale_coefficients(p(2), 1, Some(&s)).is_err());
    }
}
