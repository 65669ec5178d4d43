use alloc::vec::Vec;

use num_traits::Float;

use super::index::WaveletIndex;
use crate::error::Result;
use crate::fourier::root_of_unity;
use crate::function::{Cyclotomic, ExactFunction, GridFunction, TestFunction};
use crate::padic::{arith, Ball, CosetGrid, PAdicVector};

/// Grid and per-cell phase numerators (over `p^order_exp`) of a wavelet-like table.
pub(crate) struct PhaseTable {
    pub grid: CosetGrid,
    pub phases: Vec<u64>,
    pub order_exp: u32,
}

/// `Θ_{γsa}(x) = p^{-nγ/2} χ_p(s·(p^γ x - a)) Ω(|p^γ x - a|_p)`.
///
/// Lives on `B_γ(p^{-γ} a)` with cells of radius `p^{γ - max m}`, the scale at
/// which the character is constant, so the table is exact.
pub fn wavelet(idx: &WaveletIndex) -> Result<TestFunction> {
    let t = spatial_phases(idx)?;
    let amp = Float::powf(idx.prime().get() as f64, -(idx.dim() as f64) * idx.gamma as f64 / 2.0);
    let order = idx.prime().checked_pow(t.order_exp).expect("checked when building the table");
    let values = t.phases.iter().map(|&ph| root_of_unity(ph, order) * amp).collect();
    GridFunction::from_values(t.grid, values)
}

/// [`wavelet`] with exact cyclotomic cell values.
pub fn wavelet_exact(idx: &WaveletIndex) -> Result<ExactFunction> {
    let t = spatial_phases(idx)?;
    let p = idx.prime();
    let e = -(idx.dim() as i64) * idx.gamma;
    let values = t.phases.iter().map(|&ph| Cyclotomic::root(p, t.order_exp, ph, e)).collect();
    GridFunction::from_values(t.grid, values)
}

pub(crate) fn spatial_phases(idx: &WaveletIndex) -> Result<PhaseTable> {
    let p = idx.prime();
    let m = idx.s.m();
    let big_m = idx.s.max_m();
    let center = idx.a.to_vector().scale_p(-idx.gamma);
    let grid = CosetGrid::new(Ball::new(idx.gamma, center), idx.gamma - big_m as i64)?;
    let order = p.checked_pow(big_m).expect("frequency digits fit u64");
    // z_j = p^γ c_j - a_j + k_j; only z_j mod p^{m_j} matters
    let offsets: Vec<u64> = grid
        .center()
        .components()
        .iter()
        .zip(idx.a.to_vector().components())
        .zip(&m)
        .map(|((c, a), &mj)| {
            let z = c * arith::p_pow(p, idx.gamma) - a;
            arith::reduce(&z, p, mj).expect("p^γ c - a is integral")
        })
        .collect();
    let weights: Vec<u64> = idx
        .s
        .numerators()
        .iter()
        .zip(&m)
        .map(|(&s, &mj)| s * p.checked_pow(big_m - mj).unwrap())
        .collect();
    let phases = (0..grid.len())
        .map(|i| {
            grid.multi_index(i).iter().enumerate().fold(0u128, |acc, (j, &k)| {
                let z = (offsets[j] as u128 + k as u128) % order as u128;
                (acc + z * weights[j] as u128) % order as u128
            }) as u64
        })
        .collect();
    Ok(PhaseTable { grid, phases, order_exp: big_m })
}

/// Closed form of `F[Θ_{γsa}](ξ) = p^{nγ/2} χ_p(p^{-γ} a·ξ) Ω(|s + p^{-γ} ξ|_p)`:
/// supported on `B_{-γ}(-p^γ s)` with cells of radius `p^{-γ - max g}`, where
/// `p^{g_j}` is the denominator of `a_j`.
pub fn wavelet_fourier(idx: &WaveletIndex) -> Result<TestFunction> {
    let p = idx.prime();
    let s = idx.s.to_vector();
    let a = idx.a.to_vector();
    let g = idx.a.exps();
    let big_g = idx.a.max_exp();
    let ball = Ball::new(-idx.gamma, s.scale_p(idx.gamma).neg());
    let grid = CosetGrid::new(ball, -idx.gamma - big_g as i64)?;
    // ξ = c + p^γ k, so p^{-γ} a·ξ = p^{-γ} a·c + Σ a_j k_j
    let base = a.scale_p(-idx.gamma).dot(grid.center());
    let (_, base_exp) = arith::fractional_phase(base.value(), p);
    let e = base_exp.max(big_g);
    let order = p.checked_pow(e).expect("phase denominator fits u64");
    let base_num = arith::reduce(&(arith::fractional_part(base.value(), p) * arith::p_pow(p, e as i64)), p, e)
        .expect("scaled fractional part is integral");
    let weights: Vec<u64> = idx
        .a
        .numerators()
        .iter()
        .zip(&g)
        .map(|(&aj, &gj)| aj * p.checked_pow(e - gj).unwrap())
        .collect();
    let amp = Float::powf(p.get() as f64, idx.dim() as f64 * idx.gamma as f64 / 2.0);
    let values = (0..grid.len())
        .map(|i| {
            let t = grid.multi_index(i).iter().zip(&weights).fold(base_num as u128, |acc, (&k, &w)| {
                (acc + (k as u128 % order as u128) * w as u128) % order as u128
            }) as u64;
            root_of_unity(t, order) * amp
        })
        .collect();
    GridFunction::from_values(grid, values)
}

/// `-p^γ s`, the frequency at which a symbol is evaluated to get the eigenvalue
/// on `Θ_{γsa}`.
pub fn eigen_frequency(idx: &WaveletIndex) -> PAdicVector {
    idx.s.to_vector().scale_p(idx.gamma).neg()
}

/// Ball `B_{-γ}(-p^γ s) = p^γ(-s + Z_p^n)` carrying the Fourier transform of
/// `Θ_{γsa}`.
pub fn frequency_ball(idx: &WaveletIndex) -> Ball {
    Ball::new(-idx.gamma, eigen_frequency(idx))
}
