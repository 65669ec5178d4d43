use num_complex::Complex64;
use num_traits::Float;

use super::gamma::{check_pole, gamma_p, nearest_pole, p_cpow};
use super::symbol::norm_power;
use crate::error::{Error, Result};
use crate::function::TestFunction;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `f(0)`, zero when the origin is outside the support.
fn value_at_origin(f: &TestFunction) -> Complex64 {
    f.grid().origin_cell().map_or(zero(), |i| f.values()[i])
}

/// `∫ |x|^{α-n} (f(x) - f(0) Ω(|x|)) dx`, summed cell by cell. Shells inside a
/// cell at the origin and the part of `B_0` outside the support are added in
/// closed form.
fn regularized(f: &TestFunction, alpha: Complex64) -> Complex64 {
    let grid = f.grid();
    let p = grid.prime();
    let n = grid.dim() as f64;
    let q = 1.0 - Float::powf(p.get() as f64, -n);
    let f0 = value_at_origin(f);
    let vol = grid.cell_measure_f64();
    let l = grid.cell_exp();
    let shell = |k: i64| p_cpow(p, alpha * k as f64) * q;
    let mut acc = zero();
    for (v, e) in f.values().iter().zip(grid.cell_norm_exponents()) {
        match e {
            Some(e) => {
                let w = norm_power(p, e, alpha - n);
                acc += w * if e <= 0 { v - f0 } else { *v } * vol;
            }
            None => {
                // shells p^k, 1 ≤ k ≤ l, where f = f(0) and Ω = 0
                for k in 1..=l {
                    acc += f0 * shell(k);
                }
            }
        }
    }
    if grid.is_centered() {
        for k in grid.support_exp() + 1..=0 {
            acc -= f0 * shell(k);
        }
    }
    acc
}

/// `⟨|x|_p^{α-n}, f⟩` continued analytically in `α`:
/// `∫ |x|^{α-n}(f(x) - f(0)Ω(|x|)) dx + f(0)(1 - p^{-n}) / (1 - p^{-α})`.
pub fn riesz_pairing(alpha: Complex64, f: &TestFunction) -> Result<Complex64> {
    let p = f.prime();
    check_pole(p, alpha)?;
    let q = 1.0 - Float::powf(p.get() as f64, -(f.dim() as f64));
    let f0 = value_at_origin(f);
    let one = Complex64::new(1.0, 0.0);
    Ok(regularized(f, alpha) + f0 * q / (one - p_cpow(p, -alpha)))
}

/// `⟨κ_α, f⟩` with `κ_α = |x|^{α-n} / Γ_p^{(n)}(α)`. At `α = n` the kernel is
/// the logarithmic one; use [`log_kernel_pairing`].
pub fn riesz_kernel_pairing(alpha: Complex64, f: &TestFunction) -> Result<Complex64> {
    let g = gamma_p(f.prime(), f.dim(), alpha)?.value;
    if g.norm() == 0.0 {
        let (j, _) = nearest_pole(f.prime(), alpha - f.dim() as f64);
        return Err(Error::Pole { alpha, j });
    }
    Ok(riesz_pairing(alpha, f)? / g)
}

/// `⟨P(|x|_p^{-n}), f⟩ = ∫ |x|^{-n}(f(x) - f(0)Ω(|x|)) dx`.
pub fn principal_value_pairing(f: &TestFunction) -> Complex64 {
    regularized(f, Complex64::new(0.0, 0.0))
}

/// `⟨κ_n, f⟩ = -(1 - p^{-n}) / ln p · ∫ ln|x|_p f(x) dx` for Lizorkin `f`, the
/// limit of [`riesz_kernel_pairing`] as `α → n`.
pub fn log_kernel_pairing(f: &TestFunction) -> Result<Complex64> {
    if !f.is_lizorkin() {
        return Err(Error::NotLizorkin { integral: f.integrate() });
    }
    let grid = f.grid();
    let p = grid.prime();
    let ln_p = p.ln();
    let pn = Float::powi(p.get() as f64, grid.dim() as i32);
    let vol = grid.cell_measure_f64();
    let l = grid.cell_exp();
    let mut acc = zero();
    for (v, e) in f.values().iter().zip(grid.cell_norm_exponents()) {
        acc += match e {
            Some(e) => v * (e as f64 * ln_p * vol),
            // ∫_{B_l} ln|x| dx = ln p · p^{nl} (l - 1/(p^n - 1))
            None => v * (ln_p * vol * (l as f64 - 1.0 / (pn - 1.0))),
        };
    }
    Ok(-acc * (1.0 - 1.0 / pn) / ln_p)
}
