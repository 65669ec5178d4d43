use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::arith;
use crate::error::{Error, Result};
use crate::prime::Prime;

/// An exact rational number viewed as an element of `Q_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicScalar {
    p: Prime,
    value: BigRational,
}

impl PAdicScalar {
    pub fn new(p: Prime, value: BigRational) -> Self {
        PAdicScalar { p, value }
    }

    pub fn from_ratio(p: Prime, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(PAdicScalar::new(p, BigRational::new(num.into(), den.into())))
    }

    pub fn from_bigints(p: Prime, num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(PAdicScalar::new(p, BigRational::new(num, den)))
    }

    pub fn from_int(p: Prime, n: i64) -> Self {
        PAdicScalar::new(p, BigRational::from_integer(n.into()))
    }

    pub fn zero(p: Prime) -> Self {
        PAdicScalar::new(p, BigRational::zero())
    }

    /// `p^e`.
    pub fn p_power(p: Prime, e: i64) -> Self {
        PAdicScalar::new(p, arith::p_pow(p, e))
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The exponent `γ` in `x = p^γ m/n` with `p ∤ m n`.
    pub fn valuation(&self) -> Result<i64> {
        arith::valuation(&self.value, self.p).ok_or(Error::ZeroValuation)
    }

    /// `|x|_p` as an exact rational; zero for zero.
    pub fn norm(&self) -> BigRational {
        match arith::valuation(&self.value, self.p) {
            None => BigRational::zero(),
            Some(v) => arith::p_pow(self.p, -v),
        }
    }

    /// `log_p |x|_p`, or `None` for zero.
    pub fn norm_exponent(&self) -> Option<i64> {
        arith::valuation(&self.value, self.p).map(|v| -v)
    }

    /// `{x}_p`, the tail of the digit expansion at negative positions.
    pub fn fractional_part(&self) -> BigRational {
        arith::fractional_part(&self.value, self.p)
    }

    /// Digits `d_γ, …, d_k` of the canonical expansion `x = Σ d_i p^i`.
    pub fn digit_expansion(&self, k: i64) -> Result<Vec<u64>> {
        let v = self.valuation()?;
        if k < v {
            return Err(Error::EmptyDigitRange { precision: k, valuation: v });
        }
        let count = (k - v + 1) as u32;
        let unit = &self.value * arith::p_pow(self.p, -v);
        let mut rest = arith::reduce_big(&unit, self.p, count).expect("unit is p-integral");
        let pb = num_bigint::BigUint::from(self.p.get());
        let mut digits = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let (q, r) = rest.div_rem(&pb);
            digits.push(r.to_u64().expect("digit below p"));
            rest = q;
        }
        Ok(digits)
    }

    /// `p^e · x`.
    pub fn scale_p(&self, e: i64) -> Self {
        PAdicScalar::new(self.p, &self.value * arith::p_pow(self.p, e))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "p-adic scalars over different primes");
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={})", self.value, self.p)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a> $tr<&'a PAdicScalar> for &'a PAdicScalar {
            type Output = PAdicScalar;
            fn $method(self, rhs: &'a PAdicScalar) -> PAdicScalar {
                self.check(rhs);
                PAdicScalar::new(self.p, &self.value $op &rhs.value)
            }
        }
        impl $tr for PAdicScalar {
            type Output = PAdicScalar;
            fn $method(self, rhs: PAdicScalar) -> PAdicScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &PAdicScalar {
    type Output = PAdicScalar;
    fn neg(self) -> PAdicScalar {
        PAdicScalar::new(self.p, -&self.value)
    }
}

impl Neg for PAdicScalar {
    type Output = PAdicScalar;
    fn neg(self) -> PAdicScalar {
        -&self
    }
}
