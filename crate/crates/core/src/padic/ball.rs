use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use super::{arith, PAdicVector};
use crate::error::Result;
use crate::prime::Prime;

/// How two balls of the same space sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallRelation {
    Disjoint,
    Equal,
    /// The first ball strictly contains the second.
    Contains,
    /// The first ball is strictly contained in the second.
    ContainedIn,
}

/// The ball `B_γ^n(a) = {x : |x - a|_p ≤ p^γ}`.
///
/// The center is stored in canonical form: the representative of `a` modulo
/// `p^{-γ} Z_p^n` whose digits all sit at positions below `-γ`. Two balls are
/// therefore equal exactly when their fields are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ball {
    radius_exp: i64,
    center: PAdicVector,
}

impl Ball {
    pub fn new(radius_exp: i64, center: PAdicVector) -> Self {
        let center = canonical_center(&center, radius_exp);
        Ball { radius_exp, center }
    }

    /// `B_γ^n(0)`.
    pub fn centered(p: Prime, n: usize, radius_exp: i64) -> Self {
        Ball { radius_exp, center: PAdicVector::zero(p, n) }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.center.prime()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    #[inline]
    pub fn radius_exp(&self) -> i64 {
        self.radius_exp
    }

    pub fn center(&self) -> &PAdicVector {
        &self.center
    }

    pub fn contains(&self, x: &PAdicVector) -> Result<bool> {
        self.center.check_compatible(x)?;
        Ok(within(&x.sub(&self.center), self.radius_exp))
    }

    /// Haar measure `p^{nγ}` with the unit ball normalized to one.
    pub fn measure(&self) -> BigRational {
        arith::p_pow(self.prime(), self.radius_exp * self.dim() as i64)
    }

    pub fn measure_f64(&self) -> f64 {
        num_traits::Float::powi(self.prime().get() as f64, (self.radius_exp * self.dim() as i64) as i32)
    }

    pub fn relation(&self, other: &Ball) -> Result<BallRelation> {
        self.center.check_compatible(&other.center)?;
        let big = self.radius_exp.max(other.radius_exp);
        if !within(&self.center.sub(&other.center), big) {
            return Ok(BallRelation::Disjoint);
        }
        Ok(match self.radius_exp.cmp(&other.radius_exp) {
            core::cmp::Ordering::Equal => BallRelation::Equal,
            core::cmp::Ordering::Greater => BallRelation::Contains,
            core::cmp::Ordering::Less => BallRelation::ContainedIn,
        })
    }

    /// The smaller of two intersecting balls, or `None` when disjoint.
    pub fn intersection(&self, other: &Ball) -> Result<Option<Ball>> {
        Ok(match self.relation(other)? {
            BallRelation::Disjoint => None,
            BallRelation::Equal | BallRelation::ContainedIn => Some(self.clone()),
            BallRelation::Contains => Some(other.clone()),
        })
    }

    /// The smallest ball containing both.
    pub fn hull(&self, other: &Ball) -> Result<Ball> {
        self.center.check_compatible(&other.center)?;
        let gap = self.center.sub(&other.center).norm_exponent();
        let radius = self.radius_exp.max(other.radius_exp).max(gap.unwrap_or(i64::MIN));
        Ok(Ball::new(radius, self.center.clone()))
    }

    /// Same ball, described from a different member.
    pub fn recenter(&self, x: &PAdicVector) -> Result<Option<Ball>> {
        if self.contains(x)? {
            Ok(Some(Ball::new(self.radius_exp, x.clone())))
        } else {
            Ok(None)
        }
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{}({}) in Q_{}^{}", self.radius_exp, self.center, self.prime(), self.dim())
    }
}

/// `|x|_p ≤ p^γ`.
pub(crate) fn within(x: &PAdicVector, gamma: i64) -> bool {
    match x.norm_exponent() {
        None => true,
        Some(e) => e <= gamma,
    }
}

/// Representative of `x` modulo `p^{-γ} Z_p^n` with digits only below position `-γ`.
pub(crate) fn canonical_center(x: &PAdicVector, gamma: i64) -> PAdicVector {
    let p = x.prime();
    let down = arith::p_pow(p, -gamma);
    let up = arith::p_pow(p, gamma);
    let comps: Vec<BigRational> = x
        .components()
        .iter()
        .map(|c| arith::fractional_part(&(c * &up), p) * &down)
        .collect();
    PAdicVector::new(p, comps).expect("dimension preserved")
}
