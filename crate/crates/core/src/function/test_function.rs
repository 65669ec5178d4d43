use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::grid_function::{common_grid, CellValue, GridFunction};
use crate::error::{Error, Result};
use crate::padic::{Ball, CosetGrid};
use crate::prime::Prime;

/// Relative tolerance of the Lizorkin (mean-zero) test.
pub const LIZORKIN_TOL: f64 = 1e-12;

impl CellValue for Complex64 {
    fn zero(_: Prime) -> Self {
        Complex64::new(0.0, 0.0)
    }
}

/// A complex-valued Bruhat–Schwartz test function.
pub type TestFunction = GridFunction<Complex64>;

impl GridFunction<Complex64> {
    /// Like [`from_values`](GridFunction::from_values) but rejects NaN and infinities.
    pub fn new(grid: CosetGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        GridFunction::from_values(grid, coeffs)
    }

    /// The indicator of `ball`.
    pub fn indicator(ball: &Ball) -> Self {
        let grid = CosetGrid::new(ball.clone(), ball.radius_exp()).expect("single cell");
        GridFunction { grid, values: alloc::vec![Complex64::new(1.0, 0.0)] }
    }

    /// `Ω`, the indicator of `Z_p^n`.
    pub fn omega(p: Prime, n: usize) -> Self {
        Self::indicator(&Ball::centered(p, n, 0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.values
    }

    pub fn integrate(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.grid.cell_measure_f64()
    }

    /// `∫ f · conj(g)`, computed on the intersection of the supports.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        let ball = match self.support().intersection(other.support())? {
            Some(b) => b,
            None => return Ok(Complex64::new(0.0, 0.0)),
        };
        let l = self.grid.cell_exp().min(other.grid.cell_exp()).min(ball.radius_exp());
        let grid = CosetGrid::new(ball, l)?;
        let f = self.resample(&grid)?;
        let g = other.resample(&grid)?;
        let s: Complex64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * grid.cell_measure_f64())
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|c| c.norm_sqr()).sum();
        (s * self.grid.cell_measure_f64()).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product; lives on the intersection of the supports.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let l = self.grid.cell_exp().min(other.grid.cell_exp());
        match self.support().intersection(other.support())? {
            Some(ball) => {
                let l = l.min(ball.radius_exp());
                let grid = CosetGrid::new(ball, l)?;
                let f = self.resample(&grid)?;
                let g = other.resample(&grid)?;
                let values = f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect();
                Ok(GridFunction { grid, values })
            }
            None => Ok(GridFunction::zeros(CosetGrid::new(self.support().clone(), l)?)),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        let grid = common_grid(&self.grid, &other.grid)?;
        let f = self.resample(&grid)?;
        let g = other.resample(&grid)?;
        let values = f.values.iter().zip(&g.values).map(|(&a, &b)| op(a, b)).collect();
        Ok(GridFunction { grid, values })
    }

    /// `‖f - g‖_2`.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.l2_norm())
    }

    /// `‖f - g‖_∞`.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }

    /// Mean zero up to `1e-12 · ‖f‖_∞ · vol(supp f)`.
    pub fn is_lizorkin(&self) -> bool {
        let vol = self.support().measure_f64();
        self.integrate().norm() <= LIZORKIN_TOL * self.sup_norm() * vol
    }

    /// Drop cells whose value is negligible and shrink to the smallest ball still
    /// covering the rest. Useful after transforms produce large mostly-zero tables.
    pub fn trim(&self, tol: f64) -> Result<Self> {
        let keep: Vec<usize> = (0..self.values.len()).filter(|&i| self.values[i].norm() > tol).collect();
        if keep.is_empty() {
            let grid = CosetGrid::new(
                Ball::new(self.grid.cell_exp(), self.grid.center().clone()),
                self.grid.cell_exp(),
            )?;
            return Ok(GridFunction::zeros(grid));
        }
        // the hull radius is fixed by the lowest digit at which kept cells differ
        let p = self.prime().get();
        let k0 = self.grid.multi_index(keep[0]);
        let digits = self.grid.digits() as i64;
        let mut shared = digits;
        for &i in &keep[1..] {
            for (a, b) in self.grid.multi_index(i).iter().zip(&k0) {
                let mut d = a.abs_diff(*b);
                if d == 0 {
                    continue;
                }
                let mut v = 0i64;
                while d % p == 0 {
                    d /= p;
                    v += 1;
                }
                shared = shared.min(v);
            }
        }
        let radius = self.grid.support_exp() - shared;
        let ball = Ball::new(radius, self.grid.representative(keep[0]));
        let grid = CosetGrid::new(ball, self.grid.cell_exp())?;
        self.resample(&grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PAdicVector;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn omega_integrates_to_one() {
        let f = TestFunction::omega(p(5), 2);
        assert!((f.integrate() - c(1.0)).norm() < 1e-15);
        assert!(!f.is_lizorkin());
    }

    #[test]
    fn omega_evaluation() {
        let f = TestFunction::omega(p(3), 1);
        let inside = PAdicVector::from_ratios(p(3), &[(7, 2)]).unwrap();
        let outside = PAdicVector::from_ratios(p(3), &[(1, 3)]).unwrap();
        assert_eq!(f.evaluate(&inside).unwrap(), c(1.0));
        assert_eq!(f.evaluate(&outside).unwrap(), c(0.0));
    }

    #[test]
    fn mean_zero_step_is_lizorkin() {
        let grid = CosetGrid::centered(p(2), 1, 0, -1).unwrap();
        let f = TestFunction::new(grid, vec![c(1.0), c(-1.0)]).unwrap();
        assert!(f.is_lizorkin());
        assert!((f.l2_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_wrong_count_and_nan() {
        let grid = CosetGrid::centered(p(2), 1, 0, -1).unwrap();
        assert!(matches!(
            TestFunction::new(grid.clone(), vec![c(1.0)]),
            Err(Error::CoefficientCount { expected: 2, got: 1 })
        ));
        assert!(matches!(TestFunction::new(grid, vec![c(1.0), c(f64::NAN)]), Err(Error::NonFinite(1))));
    }

    #[test]
    fn pullback_of_omega_is_ball_indicator() {
        // Ω(p^{-1} x - a) with a = 1/p is the indicator of B_{-1}(1)
        let omega = TestFunction::omega(p(3), 1);
        let a = PAdicVector::from_ratios(p(3), &[(1, 3)]).unwrap();
        let g = omega.affine_pullback(-1, &a).unwrap();
        assert_eq!(g.support().radius_exp(), -1);
        let one = PAdicVector::from_ratios(p(3), &[(1, 1)]).unwrap();
        assert_eq!(g.evaluate(&one).unwrap(), c(1.0));
        let four = PAdicVector::from_ratios(p(3), &[(4, 1)]).unwrap();
        assert_eq!(g.evaluate(&four).unwrap(), c(1.0));
        let zero = PAdicVector::zero(p(3), 1);
        assert_eq!(g.evaluate(&zero).unwrap(), c(0.0));
        assert!((g.integrate() - c(1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn translate_and_reflect_move_values() {
        let grid = CosetGrid::centered(p(3), 1, 0, -1).unwrap();
        let f = TestFunction::new(grid, vec![c(1.0), c(2.0), c(3.0)]).unwrap();
        let b = PAdicVector::from_ratios(p(3), &[(1, 9)]).unwrap();
        let t = f.translate(&b).unwrap();
        for (x, want) in [((1, 9), 1.0), ((10, 9), 2.0), ((19, 9), 3.0)] {
            let x = PAdicVector::from_ratios(p(3), &[x]).unwrap();
            assert_eq!(t.evaluate(&x).unwrap(), c(want));
        }
        let r = f.reflect().unwrap();
        for (x, want) in [(0, 1.0), (1, 3.0), (2, 2.0)] {
            let x = PAdicVector::from_ratios(p(3), &[(x, 1)]).unwrap();
            assert_eq!(r.evaluate(&x).unwrap(), c(want));
        }
    }

    #[test]
    fn inner_product_of_disjoint_supports_vanishes() {
        let a = Ball::new(-1, PAdicVector::from_ratios(p(2), &[(0, 1)]).unwrap());
        let b = Ball::new(-1, PAdicVector::from_ratios(p(2), &[(1, 1)]).unwrap());
        let f = TestFunction::indicator(&a);
        let g = TestFunction::indicator(&b);
        assert_eq!(f.inner_product(&g).unwrap(), c(0.0));
        assert!((f.inner_product(&f).unwrap() - c(0.5)).norm() < 1e-15);
        let s = f.add(&g).unwrap();
        assert_eq!(s.support().radius_exp(), 0);
        assert!((s.integrate() - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn trim_shrinks_to_hull() {
        let grid = CosetGrid::centered(p(2), 1, 2, -2).unwrap();
        let mut v = vec![c(0.0); 16];
        v[4] = c(1.0);
        v[12] = c(-1.0);
        let f = TestFunction::new(grid, v).unwrap();
        let t = f.trim(0.0).unwrap();
        assert_eq!(t.support().radius_exp(), -1);
        assert!((t.l2_distance(&f).unwrap()) < 1e-15);
    }
}
