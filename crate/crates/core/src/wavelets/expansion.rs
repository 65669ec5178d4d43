use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::basis::wavelet;
use super::index::{FrequencyIndex, TranslationIndex, WaveletIndex};
use crate::error::{Error, Result};
use crate::function::{GridFunction, TestFunction};
use crate::padic::{arith, Ball, CosetGrid, PAdicVector, MAX_CELLS};
use crate::prime::Prime;

/// Wavelet coefficients in canonical index order.
pub type CoefficientMap = BTreeMap<WaveletIndex, Complex64>;

/// Every `(γ, s, a)` with `γ ∈ [gamma_min, gamma_max]`, `|s_j|_p = p^{m_j}`, whose
/// support `B_γ(p^{-γ} a)` meets `support`, in canonical order.
///
/// At each scale the wavelet supports tile `Q_p^n`, so every scale contributes:
/// one translation per axis when `γ ≥ R`, and `p^{R-γ}` per axis otherwise.
pub fn enumerate_indices(support: &Ball, gamma_min: i64, gamma_max: i64, m: &[u32]) -> Result<Vec<WaveletIndex>> {
    if gamma_min > gamma_max {
        return Err(Error::EmptyRange);
    }
    let p = support.prime();
    if m.len() != support.dim() {
        return Err(Error::DimensionMismatch(support.dim(), m.len()));
    }
    let freqs = FrequencyIndex::all(p, m)?;
    let r = support.radius_exp();
    let mut out = Vec::new();
    for gamma in gamma_min..=gamma_max {
        let spread = (r - gamma).max(0);
        let per_axis = p
            .checked_pow(u32::try_from(spread).unwrap_or(u32::MAX))
            .filter(|&c| c as usize <= MAX_CELLS)
            .ok_or(Error::GridTooLarge { digits: spread, dim: support.dim() })?;
        let total = (per_axis as usize)
            .checked_pow(support.dim() as u32)
            .and_then(|t| t.checked_mul(freqs.len()))
            .filter(|&t| out.len() + t <= MAX_CELLS)
            .ok_or(Error::GridTooLarge { digits: spread, dim: support.dim() })?;
        out.reserve(total);
        let translations = translations_at(support, gamma, per_axis)?;
        for s in &freqs {
            for a in &translations {
                out.push(WaveletIndex { gamma, s: s.clone(), a: a.clone() });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn translations_at(support: &Ball, gamma: i64, per_axis: u64) -> Result<Vec<TranslationIndex>> {
    let p = support.prime();
    let step = arith::p_pow(p, gamma - support.radius_exp());
    let scale = arith::p_pow(p, gamma);
    let axes: Vec<Vec<num_rational::BigRational>> = support
        .center()
        .components()
        .iter()
        .map(|c| {
            (0..per_axis)
                .map(|t| c * &scale + num_rational::BigRational::from_integer(t.into()) * &step)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut k = alloc::vec![0usize; axes.len()];
    loop {
        let comps = k.iter().enumerate().map(|(j, &kj)| axes[j][kj].clone()).collect();
        out.push(TranslationIndex::from_vector(&PAdicVector::new(p, comps)?)?);
        let mut j = axes.len();
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            k[j] += 1;
            if k[j] < axes[j].len() {
                break;
            }
            k[j] = 0;
        }
    }
}

/// `c_idx = ⟨f, Θ_idx⟩`, computed directly.
pub fn analyze(f: &TestFunction, indices: &[WaveletIndex]) -> Result<CoefficientMap> {
    let mut out = CoefficientMap::new();
    for idx in indices {
        out.insert(idx.clone(), f.inner_product(&wavelet(idx)?)?);
    }
    Ok(out)
}

/// `Σ c_idx Θ_idx` on one grid covering every term.
pub fn synthesize(coeffs: &CoefficientMap) -> Result<TestFunction> {
    let mut terms = Vec::with_capacity(coeffs.len());
    for (idx, c) in coeffs {
        terms.push((wavelet(idx)?, *c));
    }
    let (first, _) = terms.first().ok_or(Error::EmptyRange)?;
    let mut ball = first.support().clone();
    let mut cell = first.grid().cell_exp();
    for (w, _) in &terms[1..] {
        ball = ball.hull(w.support())?;
        cell = cell.min(w.grid().cell_exp());
    }
    let grid = CosetGrid::new(ball, cell)?;
    let mut acc = GridFunction::zeros(grid.clone());
    for (w, c) in &terms {
        let map = grid.map_from(w.grid())?;
        for (dst, src) in acc.values.iter_mut().zip(map) {
            if let Some(i) = src {
                *dst += w.values()[i] * c;
            }
        }
    }
    Ok(acc)
}

/// `‖f - synthesize(analyze(f))‖_2` over the given indices.
pub fn reconstruction_residual(f: &TestFunction, indices: &[WaveletIndex]) -> Result<f64> {
    let coeffs = analyze(f, indices)?;
    f.l2_distance(&synthesize(&coeffs)?)
}

/// Number of frequencies in `J_{p;m}`: `(p - 1) p^{m-1}`.
pub fn frequency_count(p: Prime, m: u32) -> u64 {
    (p.get() - 1) * p.checked_pow(m.saturating_sub(1)).expect("fits")
}

/// `Σ_{γ ≥ from} |J_{p;m}| p^{-γ}`, the tail of the Parseval series of `Ω` in
/// dimension one, in closed form.
pub fn omega_parseval_tail(p: Prime, m: u32, from: i64) -> f64 {
    let pf = p.get() as f64;
    frequency_count(p, m) as f64 * Float::powi(pf, -from as i32) / (1.0 - 1.0 / pf)
}

/// Terms of the Parseval series of `Ω` for `γ ∈ [m, m + window]`, each computed
/// as `Σ_s |⟨Ω, θ_{γ s 0}⟩|^2`, plus the closed-form tail.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsevalWitness {
    pub truncated: f64,
    pub tail: f64,
}

impl ParsevalWitness {
    pub fn total(&self) -> f64 {
        self.truncated + self.tail
    }
}

pub fn omega_parseval(p: Prime, m: u32, window: u32) -> Result<ParsevalWitness> {
    let omega = TestFunction::omega(p, 1);
    let freqs = FrequencyIndex::all(p, &[m])?;
    let zero = TranslationIndex::zero(p, 1);
    // sum the smallest terms first
    let mut truncated = 0.0;
    for gamma in (m as i64..=m as i64 + window as i64).rev() {
        for s in &freqs {
            let idx = WaveletIndex::new(gamma, s.clone(), zero.clone())?;
            truncated += omega.inner_product(&wavelet(&idx)?)?.norm_sqr();
        }
    }
    let tail = omega_parseval_tail(p, m, m as i64 + window as i64 + 1);
    Ok(ParsevalWitness { truncated, tail })
}
