use num_complex::Complex64;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::error::Result;
use crate::function::rational_to_f64;
use crate::padic::{PAdicScalar, PAdicVector};

/// A value of the additive character together with its exact phase.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterValue {
    /// `{y}_p ∈ [0, 1)`.
    pub phase: BigRational,
    /// `e^{2πi {y}_p}`.
    pub value: Complex64,
}

/// `e^{2πi t / order}` for integer `t`.
pub(crate) fn root_of_unity(t: u64, order: u64) -> Complex64 {
    if order <= 1 {
        return Complex64::new(1.0, 0.0);
    }
    let t = t % order;
    turn(t as f64 / order as f64)
}

/// `e^{2πi x}`, folded into the first octant before calling the trig functions.
pub(crate) fn turn(x: f64) -> Complex64 {
    let x = x - x.floor();
    // quarter-turn symmetry keeps the argument small
    let q = (x * 4.0).floor();
    let r = x - q * 0.25;
    let a = 2.0 * core::f64::consts::PI * r;
    let (s, c) = (a.sin(), a.cos());
    match q as i64 {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// The additive character `χ_p(y) = e^{2πi {y}_p}`.
pub fn chi_p(y: &PAdicScalar) -> CharacterValue {
    let phase = y.fractional_part();
    let value = if phase.is_zero() { Complex64::new(1.0, 0.0) } else { turn(rational_to_f64(&phase)) };
    CharacterValue { phase, value }
}

/// `χ_p(ξ · x)`.
pub fn character(xi: &PAdicVector, x: &PAdicVector) -> Result<CharacterValue> {
    xi.check_compatible(x)?;
    Ok(chi_p(&xi.dot(x)))
}
