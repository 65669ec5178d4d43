//! Exact arithmetic in `Q(ζ_{p^k}, √p)` for tables whose entries are rational
//! multiples of `p`-power roots of unity.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::grid_function::{CellValue, GridFunction};
use crate::error::Result;
use crate::padic::{arith, Ball, CosetGrid};
use crate::prime::Prime;

/// `√p^e · Σ_k c_k ζ^k` with `ζ = e^{2πi/p^K}`.
///
/// The representation is not unique (the cyclotomic relations are not reduced
/// away), so equality goes through [`is_zero`](Self::is_zero).
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    p: Prime,
    order_exp: u32,
    sqrt_p_exp: i64,
    coeffs: Vec<BigRational>,
}

impl CellValue for Cyclotomic {
    fn zero(p: Prime) -> Self {
        Cyclotomic::zero(p)
    }
}

impl Cyclotomic {
    pub fn zero(p: Prime) -> Self {
        Cyclotomic { p, order_exp: 0, sqrt_p_exp: 0, coeffs: vec![BigRational::zero()] }
    }

    pub fn rational(p: Prime, q: BigRational) -> Self {
        Cyclotomic { p, order_exp: 0, sqrt_p_exp: 0, coeffs: vec![q] }
    }

    pub fn one(p: Prime) -> Self {
        Self::rational(p, BigRational::one())
    }

    /// `√p^e · ζ_{p^K}^k`.
    pub fn root(p: Prime, order_exp: u32, k: u64, sqrt_p_exp: i64) -> Self {
        let order = p.checked_pow(order_exp).expect("root order fits u64");
        let mut coeffs = vec![BigRational::zero(); order as usize];
        coeffs[(k % order) as usize] = BigRational::one();
        Cyclotomic { p, order_exp, sqrt_p_exp, coeffs }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    fn order(&self) -> usize {
        self.coeffs.len()
    }

    fn is_trivially_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-express over `ζ_{p^K}` with a larger `K`.
    fn lift(&self, order_exp: u32) -> Self {
        debug_assert!(order_exp >= self.order_exp);
        if order_exp == self.order_exp {
            return self.clone();
        }
        let stride = self.p.checked_pow(order_exp - self.order_exp).unwrap() as usize;
        let mut coeffs = vec![BigRational::zero(); self.order() * stride];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * stride] = c.clone();
        }
        Cyclotomic { p: self.p, order_exp, sqrt_p_exp: self.sqrt_p_exp, coeffs }
    }

    /// Move the `√p` exponent down to `e` (same parity) by folding `p^{(old-e)/2}`
    /// into the rational coefficients.
    fn with_sqrt_exp(&self, e: i64) -> Self {
        let d = self.sqrt_p_exp - e;
        debug_assert!(d % 2 == 0);
        let f = arith::p_pow(self.p, d / 2);
        Cyclotomic {
            p: self.p,
            order_exp: self.order_exp,
            sqrt_p_exp: e,
            coeffs: self.coeffs.iter().map(|c| c * &f).collect(),
        }
    }

    /// Sum, or `None` when the operands have `√p` exponents of different parity
    /// (the sum then leaves this representation).
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_trivially_zero() {
            return Some(other.clone());
        }
        if other.is_trivially_zero() {
            return Some(self.clone());
        }
        if (self.sqrt_p_exp - other.sqrt_p_exp) % 2 != 0 {
            return None;
        }
        let e = self.sqrt_p_exp.min(other.sqrt_p_exp);
        let k = self.order_exp.max(other.order_exp);
        let a = self.lift(k).with_sqrt_exp(e);
        let b = other.lift(k).with_sqrt_exp(e);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Some(Cyclotomic { p: self.p, order_exp: k, sqrt_p_exp: e, coeffs })
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order_exp.max(other.order_exp);
        let a = self.lift(k);
        let b = other.lift(k);
        let n = a.order();
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[(i + j) % n] += x * y;
                }
            }
        }
        Cyclotomic { p: self.p, order_exp: k, sqrt_p_exp: a.sqrt_p_exp + b.sqrt_p_exp, coeffs }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { coeffs: self.coeffs.iter().map(|c| c * q).collect(), ..self.clone() }
    }

    pub fn conj(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - k) % n] = c.clone();
        }
        Cyclotomic { coeffs, ..self.clone() }
    }

    /// The only relations among `1, ζ, …, ζ^{P-1}` (`P = p^K`) are
    /// `Σ_{i<p} ζ^{r + iP/p} = 0`, so the value vanishes iff the coefficients are
    /// constant on each residue class modulo `P/p`.
    pub fn is_zero(&self) -> bool {
        if self.order_exp == 0 {
            return self.coeffs[0].is_zero();
        }
        let h = self.order() / self.p.get() as usize;
        (0..h).all(|r| {
            let first = &self.coeffs[r];
            self.coeffs[r..].iter().step_by(h).all(|c| c == first)
        })
    }

    /// The value as an exact rational, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.sqrt_p_exp % 2 != 0 {
            return None;
        }
        let base = if self.order_exp == 0 {
            self.coeffs[0].clone()
        } else {
            let h = self.order() / self.p.get() as usize;
            // class 0 contributes c_0 - c_h plus a multiple of Σ ζ^{ih} = 0
            let ok = (1..h).all(|r| {
                let first = &self.coeffs[r];
                self.coeffs[r..].iter().step_by(h).all(|c| c == first)
            }) && self.coeffs[h..].iter().step_by(h).all(|c| c == &self.coeffs[h]);
            if !ok {
                return None;
            }
            &self.coeffs[0] - &self.coeffs[h]
        };
        Some(base * arith::p_pow(self.p, self.sqrt_p_exp / 2))
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        let s: Complex64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let t = 2.0 * core::f64::consts::PI * k as f64 / n;
                Complex64::new(t.cos(), t.sin()) * rational_to_f64(c)
            })
            .sum();
        s * (self.p.get() as f64).sqrt().powi(self.sqrt_p_exp as i32)
    }

    pub fn equals(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Some(d) => d.is_zero(),
            // different parity: equal only if both vanish
            None => self.is_zero() && other.is_zero(),
        }
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // rescale huge numerators and denominators by their bit lengths
            let nb = q.numer().bits() as i64;
            let db = q.denom().bits() as i64;
            let shift_n = (nb - 60).max(0);
            let shift_d = (db - 60).max(0);
            let n = (q.numer().abs() >> shift_n as usize).to_f64().unwrap();
            let d = (q.denom() >> shift_d as usize).to_f64().unwrap();
            let sign = if q.is_negative() { -1.0 } else { 1.0 };
            sign * n / d * 2f64.powi((shift_n - shift_d) as i32)
        }
    }
}

/// A test function with exact cyclotomic cell values.
pub type ExactFunction = GridFunction<Cyclotomic>;

impl GridFunction<Cyclotomic> {
    pub fn exact_indicator(ball: &Ball) -> Self {
        let grid = CosetGrid::new(ball.clone(), ball.radius_exp()).expect("single cell");
        let one = Cyclotomic::one(grid.prime());
        GridFunction { grid, values: vec![one] }
    }

    pub fn to_test_function(&self) -> GridFunction<Complex64> {
        self.map(Cyclotomic::to_complex)
    }

    pub fn exact_integrate(&self) -> Option<Cyclotomic> {
        let mut acc = Cyclotomic::zero(self.prime());
        for v in &self.values {
            acc = acc.checked_add(v)?;
        }
        Some(acc.scale(&self.grid.cell_measure()))
    }

    /// `∫ f · conj(g)`; `None` when the sum leaves the representation.
    pub fn exact_inner_product(&self, other: &Self) -> Result<Option<Cyclotomic>> {
        let ball = match self.support().intersection(other.support())? {
            Some(b) => b,
            None => return Ok(Some(Cyclotomic::zero(self.prime()))),
        };
        let l = self.grid.cell_exp().min(other.grid.cell_exp()).min(ball.radius_exp());
        let grid = CosetGrid::new(ball, l)?;
        let f = self.resample(&grid)?;
        let g = other.resample(&grid)?;
        let mut acc = Cyclotomic::zero(self.prime());
        for (a, b) in f.values.iter().zip(&g.values) {
            acc = match acc.checked_add(&a.mul(&b.conj())) {
                Some(s) => s,
                None => return Ok(None),
            };
        }
        Ok(Some(acc.scale(&grid.cell_measure())))
    }

    /// Exact pointwise combination `f + g` on the common refinement.
    pub fn exact_add(&self, other: &Self) -> Result<Option<Self>> {
        let (f, g) = self.common_refinement(other)?;
        let mut values = Vec::with_capacity(f.values.len());
        for (a, b) in f.values.iter().zip(&g.values) {
            match a.checked_add(b) {
                Some(s) => values.push(s),
                None => return Ok(None),
            }
        }
        Ok(Some(GridFunction { grid: f.grid, values }))
    }

    pub fn exact_scale(&self, c: &Cyclotomic) -> Self {
        self.map(|v| v.mul(c))
    }

    /// Exact equality of the two functions as functions on `Q_p^n`.
    pub fn exact_equals(&self, other: &Self) -> Result<bool> {
        let (f, g) = self.common_refinement(other)?;
        Ok(f.values.iter().zip(&g.values).all(|(a, b)| a.equals(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for (pp, k) in [(2u64, 1u32), (2, 3), (3, 2), (5, 1)] {
            let pr = p(pp);
            let order = pp.pow(k);
            let mut acc = Cyclotomic::zero(pr);
            for j in 0..order {
                acc = acc.checked_add(&Cyclotomic::root(pr, k, j, 0)).unwrap();
            }
            assert!(acc.is_zero());
            assert_eq!(acc.to_rational(), Some(BigRational::zero()));
        }
    }

    #[test]
    fn root_times_conjugate_is_one() {
        let pr = p(3);
        let z = Cyclotomic::root(pr, 2, 4, 1);
        let one = z.mul(&z.conj());
        assert_eq!(one.to_rational(), Some(BigRational::from_integer(3.into())));
        assert!(Cyclotomic::root(pr, 2, 1, 0).to_rational().is_none());
    }

    #[test]
    fn minus_one_is_rational() {
        let m = Cyclotomic::root(p(2), 2, 2, 0);
        assert_eq!(m.to_rational(), Some(BigRational::from_integer((-1).into())));
        assert!((m.to_complex() - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sqrt_p_parity() {
        let a = Cyclotomic::root(p(2), 0, 0, 1);
        let b = Cyclotomic::one(p(2));
        assert!(a.checked_add(&b).is_none());
        let c = Cyclotomic::root(p(2), 0, 0, 3);
        let s = a.checked_add(&c).unwrap();
        assert!((s.to_complex().re - 3.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn big_rational_conversion() {
        let q = BigRational::new(num_traits::pow(BigInt::from(3), 700), num_traits::pow(BigInt::from(3), 699));
        assert_eq!(rational_to_f64(&q), 3.0);
        let h = arith::p_pow(p(2), -1100) * arith::p_pow(p(2), 1099);
        assert_eq!(rational_to_f64(&h), 0.5);
    }
}
