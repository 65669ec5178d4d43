use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{arith, PAdicScalar};
use crate::error::{Error, Result};
use crate::prime::Prime;

/// A point of `Q_p^n` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicVector {
    p: Prime,
    comps: Vec<BigRational>,
}

impl PAdicVector {
    pub fn new(p: Prime, comps: Vec<BigRational>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(PAdicVector { p, comps })
    }

    pub fn from_scalars(scalars: &[PAdicScalar]) -> Result<Self> {
        let first = scalars.first().ok_or(Error::ZeroDimension)?;
        let p = first.prime();
        if let Some(bad) = scalars.iter().find(|s| s.prime() != p) {
            return Err(Error::PrimeMismatch(p.get(), bad.prime().get()));
        }
        Ok(PAdicVector { p, comps: scalars.iter().map(|s| s.value().clone()).collect() })
    }

    pub fn from_ratios(p: Prime, ratios: &[(i64, i64)]) -> Result<Self> {
        let scalars = ratios
            .iter()
            .map(|&(n, d)| PAdicScalar::from_ratio(p, n, d))
            .collect::<Result<Vec<_>>>()?;
        PAdicVector::new(p, scalars.into_iter().map(|s| s.value().clone()).collect())
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        PAdicVector { p, comps: (0..n).map(|_| BigRational::zero()).collect() }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[BigRational] {
        &self.comps
    }

    pub fn component(&self, j: usize) -> PAdicScalar {
        PAdicScalar::new(self.p, self.comps[j].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    /// `log_p` of the max-norm, `None` at the origin.
    pub fn norm_exponent(&self) -> Option<i64> {
        self.comps.iter().filter_map(|c| arith::valuation(c, self.p).map(|v| -v)).max()
    }

    /// `|x|_p = max_j |x_j|_p`.
    pub fn norm(&self) -> BigRational {
        match self.norm_exponent() {
            None => BigRational::zero(),
            Some(e) => arith::p_pow(self.p, e),
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p.get(), other.p.get()));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        PAdicVector { p: self.p, comps: self.comps.iter().map(|c| -c).collect() }
    }

    /// `p^e · x`.
    pub fn scale_p(&self, e: i64) -> Self {
        let f = arith::p_pow(self.p, e);
        PAdicVector { p: self.p, comps: self.comps.iter().map(|c| c * &f).collect() }
    }

    pub fn scale(&self, t: &BigRational) -> Self {
        PAdicVector { p: self.p, comps: self.comps.iter().map(|c| c * t).collect() }
    }

    /// Scalar product `ξ · x`.
    pub fn dot(&self, other: &Self) -> PAdicScalar {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in scalar product");
        let mut acc = BigRational::zero();
        for (a, b) in self.comps.iter().zip(&other.comps) {
            acc += a * b;
        }
        PAdicScalar::new(self.p, acc)
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        assert_eq!(self.p, other.p, "p-adic vectors over different primes");
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        PAdicVector {
            p: self.p,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Display for PAdicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.comps.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}
