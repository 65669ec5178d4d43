//! Integer helpers for p-adic reductions of exact rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::prime::Prime;

/// p-adic valuation of a nonzero integer.
pub(crate) fn valuation_int(n: &BigInt, p: Prime) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p.get());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub(crate) fn valuation(r: &BigRational, p: Prime) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(valuation_int(r.numer(), p) - valuation_int(r.denom(), p))
}

/// `p^e` as an exact rational, `e` of either sign.
pub(crate) fn p_pow(p: Prime, e: i64) -> BigRational {
    let base = BigInt::from(p.get());
    let mag = num_traits::pow(base, e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

pub(crate) fn p_pow_big(p: Prime, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(p.get()), e as usize)
}

/// Reduce a p-integral rational modulo `p^e`, returning a representative in `[0, p^e)`.
/// Returns `None` when the rational is not p-integral.
pub(crate) fn reduce_big(r: &BigRational, p: Prime, e: u32) -> Option<BigUint> {
    if !r.is_zero() && valuation(r, p)? < 0 {
        return None;
    }
    let modulus = BigInt::from(p_pow_big(p, e));
    if modulus.is_one() {
        return Some(BigUint::zero());
    }
    let num = r.numer().mod_floor(&modulus);
    let den = r.denom().mod_floor(&modulus);
    let inv = den.modinv(&modulus)?;
    let v = (num * inv).mod_floor(&modulus);
    debug_assert!(v.sign() != Sign::Minus);
    v.to_biguint()
}

/// As [`reduce_big`] but for moduli fitting in a machine word.
pub(crate) fn reduce(r: &BigRational, p: Prime, e: u32) -> Option<u64> {
    reduce_big(r, p, e).map(|v| v.to_u64().expect("modulus fits u64"))
}

/// Fractional part `{x}_p` as an exact rational in `[0, 1)`.
pub(crate) fn fractional_part(r: &BigRational, p: Prime) -> BigRational {
    match valuation(r, p) {
        None => BigRational::zero(),
        Some(v) if v >= 0 => BigRational::zero(),
        Some(v) => {
            let k = (-v) as u32;
            let scaled = r * p_pow(p, -v);
            let num = reduce_big(&scaled, p, k).expect("scaled value is a p-adic unit");
            BigRational::new(BigInt::from(num), BigInt::from(p_pow_big(p, k)))
        }
    }
}

/// Fractional part written as `num / p^exp` with `num < p^exp`; `exp` is minimal.
pub(crate) fn fractional_phase(r: &BigRational, p: Prime) -> (BigUint, u32) {
    let f = fractional_part(r, p);
    if f.is_zero() {
        return (BigUint::zero(), 0);
    }
    let exp = (-valuation(&f, p).expect("nonzero")) as u32;
    (f.numer().abs().to_biguint().expect("nonnegative"), exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reduction_of_units() {
        let p = Prime::new(5).unwrap();
        // 1/3 = 2 mod 5 since 3*2 = 6
        assert_eq!(reduce(&q(1, 3), p, 1), Some(2));
        // -1 mod 125
        assert_eq!(reduce(&q(-1, 1), p, 3), Some(124));
        assert_eq!(reduce(&q(1, 5), p, 2), None);
        assert_eq!(reduce(&q(7, 1), p, 0), Some(0));
    }

    #[test]
    fn fractional_parts() {
        let p = Prime::new(2).unwrap();
        assert_eq!(fractional_part(&q(3, 4), p), q(3, 4));
        assert_eq!(fractional_part(&q(7, 4), p), q(3, 4));
        assert_eq!(fractional_part(&q(-1, 2), p), q(1, 2));
        assert_eq!(fractional_part(&q(5, 1), p), q(0, 1));
        let p3 = Prime::new(3).unwrap();
        // 1/6 = 1/(2*3); 1/2 = 2 mod 3, so {1/6}_3 = 2/3
        assert_eq!(fractional_part(&q(1, 6), p3), q(2, 3));
    }
}
