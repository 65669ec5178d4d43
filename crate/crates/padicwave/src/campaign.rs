//! Seeded verification campaigns. Sampling is single-threaded; the checks run
//! on the current rayon pool and are collected in sample order, so reports do
//! not depend on the number of workers.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use padicwave_core::fourier::fourier;
use padicwave_core::pseudodiff::{apply, eigen_check, Symbol};
use padicwave_core::wavelets::{
    omega_parseval, two_scale_coefficients, wavelet, wavelet_exact, wavelet_fourier, FrequencyIndex, WaveletIndex,
};
use padicwave_core::Prime;

use crate::config::RunConfig;
use crate::error::Result;
use crate::report::{Check, Report};

/// Largest `p^{max m}` for which the exact sub-batch runs.
const EXACT_ORDER_LIMIT: u64 = 27;
const EXACT_PAIRS: usize = 20;
const PARSEVAL_WINDOW: u32 = 40;
/// Translation denominators up to `p^2` per axis.
const TRANSLATION_EXP: u32 = 2;

fn sample_index(rng: &mut ChaCha8Rng, cfg: &RunConfig, gamma: i64) -> Result<WaveletIndex> {
    Ok(WaveletIndex::random(rng, cfg.p, gamma, &cfg.m, TRANSLATION_EXP)?)
}

/// Pairs biased towards near neighbours: equal indices, the same scale, and
/// adjacent scales all occur.
pub fn sample_pairs(cfg: &RunConfig) -> Result<Vec<(WaveletIndex, WaveletIndex)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.pairs);
    for _ in 0..cfg.pairs {
        let ga = rng.gen_range(cfg.gamma_min..=cfg.gamma_max);
        let a = sample_index(&mut rng, cfg, ga)?;
        let b = match rng.gen_range(0..10) {
            0..=2 => a.clone(),
            3..=5 => sample_index(&mut rng, cfg, ga)?,
            _ => {
                let gb = rng.gen_range(cfg.gamma_min..=cfg.gamma_max);
                sample_index(&mut rng, cfg, gb)?
            }
        };
        out.push((a, b));
    }
    Ok(out)
}

pub fn sample_singles(cfg: &RunConfig) -> Result<Vec<WaveletIndex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..cfg.trials)
        .map(|_| {
            let g = rng.gen_range(cfg.gamma_min..=cfg.gamma_max);
            sample_index(&mut rng, cfg, g)
        })
        .collect()
}

/// Largest value and the position where it occurs.
fn worst(devs: &[f64]) -> (f64, Option<usize>) {
    devs.iter().enumerate().fold((0.0, None), |(m, at), (i, &d)| {
        if d > m || d.is_nan() && !m.is_nan() {
            (d, Some(i))
        } else {
            (m, at)
        }
    })
}

pub fn verify_basis(cfg: &RunConfig) -> Result<Report> {
    let pairs = sample_pairs(cfg)?;
    let singles = sample_singles(cfg)?;
    let checks = vec![
        orthonormality(cfg, &pairs)?,
        exact_orthonormality(cfg, &pairs)?,
        zero_mean(cfg, &singles)?,
        unit_norm(cfg, &singles)?,
        fourier_closed_form(cfg, &singles)?,
        parseval(cfg)?,
        two_scale(cfg)?,
    ];
    Ok(Report { checks })
}

fn orthonormality(cfg: &RunConfig, pairs: &[(WaveletIndex, WaveletIndex)]) -> Result<Check> {
    let devs = pairs
        .par_iter()
        .map(|(a, b)| {
            let ip = wavelet(a)?.inner_product(&wavelet(b)?)?;
            let want = if a == b { 1.0 } else { 0.0 };
            Ok((ip - Complex64::new(want, 0.0)).norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    let (dev, at) = worst(&devs);
    let equal = pairs.iter().filter(|(a, b)| a == b).count();
    Ok(Check::within(
        "orthonormality",
        dev,
        cfg.tol,
        json!({
            "pairs": pairs.len(),
            "equal_pairs": equal,
            "worst_pair": at.map(|i| format!("{} {}", pairs[i].0, pairs[i].1)),
        }),
    ))
}

fn exact_orthonormality(cfg: &RunConfig, pairs: &[(WaveletIndex, WaveletIndex)]) -> Result<Check> {
    let order = cfg.p.checked_pow(cfg.m.iter().copied().max().unwrap_or(1));
    if order.map_or(true, |o| o > EXACT_ORDER_LIMIT) || cfg.n > 2 {
        return Ok(Check::with_status("exact_orthonormality", true, 0.0, json!({ "skipped": "p^max(m) too large" })));
    }
    let batch = &pairs[..pairs.len().min(EXACT_PAIRS)];
    let results = batch
        .par_iter()
        .map(|(a, b)| {
            let ip = wavelet_exact(a)?.exact_inner_product(&wavelet_exact(b)?)?;
            let want = BigRational::from_integer(if a == b { 1 } else { 0 }.into());
            Ok(ip.map(|v| v.to_rational() == Some(want)))
        })
        .collect::<Result<Vec<Option<bool>>>>()?;
    let failed = results.iter().filter(|r| **r == Some(false)).count();
    let unsupported = results.iter().filter(|r| r.is_none()).count();
    Ok(Check::with_status(
        "exact_orthonormality",
        failed == 0,
        if failed == 0 { 0.0 } else { 1.0 },
        json!({ "pairs": batch.len(), "mismatches": failed, "unrepresentable": unsupported }),
    ))
}

fn per_index(
    name: &str,
    cfg: &RunConfig,
    singles: &[WaveletIndex],
    f: impl Fn(&WaveletIndex) -> Result<f64> + Sync + Send,
) -> Result<Check> {
    let devs = singles.par_iter().map(f).collect::<Result<Vec<f64>>>()?;
    let (dev, at) = worst(&devs);
    Ok(Check::within(
        name,
        dev,
        cfg.tol,
        json!({ "indices": singles.len(), "worst_index": at.map(|i| singles[i].to_string()) }),
    ))
}

fn zero_mean(cfg: &RunConfig, singles: &[WaveletIndex]) -> Result<Check> {
    per_index("zero_mean", cfg, singles, |i| Ok(wavelet(i)?.integrate().norm()))
}

fn unit_norm(cfg: &RunConfig, singles: &[WaveletIndex]) -> Result<Check> {
    per_index("unit_norm", cfg, singles, |i| Ok((wavelet(i)?.l2_norm() - 1.0).abs()))
}

fn fourier_closed_form(cfg: &RunConfig, singles: &[WaveletIndex]) -> Result<Check> {
    per_index("fourier_closed_form", cfg, singles, |i| {
        Ok(fourier(&wavelet(i)?)?.sup_distance(&wavelet_fourier(i)?)?)
    })
}

fn distinct_m(cfg: &RunConfig) -> Vec<u32> {
    let mut m = cfg.m.clone();
    m.sort_unstable();
    m.dedup();
    m
}

fn parseval(cfg: &RunConfig) -> Result<Check> {
    let mut dev: f64 = 0.0;
    let mut terms = Vec::new();
    for m in distinct_m(cfg) {
        let w = omega_parseval(cfg.p, m, PARSEVAL_WINDOW)?;
        dev = dev.max((w.total() - 1.0).abs());
        terms.push(json!({ "m": m, "truncated": w.truncated, "tail": w.tail }));
    }
    Ok(Check::within("parseval_omega", dev, cfg.tol, json!({ "window": PARSEVAL_WINDOW, "terms": terms })))
}

/// Exact two-scale relations for `Ω` and every one-dimensional `θ_s` with
/// `|s|_p = p^{m_j}`.
fn two_scale(cfg: &RunConfig) -> Result<Check> {
    let mut cases: Vec<(u32, Option<FrequencyIndex>)> = Vec::new();
    for m in distinct_m(cfg) {
        if cfg.p.checked_pow(m).map_or(true, |o| o > EXACT_ORDER_LIMIT) {
            continue;
        }
        cases.push((m, None));
        for s in FrequencyIndex::all(cfg.p, &[m])? {
            cases.push((m, Some(s)));
        }
    }
    let results = cases
        .par_iter()
        .map(|(m, s)| Ok(two_scale_coefficients(cfg.p, *m, s.as_ref())?.verify_exact()?))
        .collect::<Result<Vec<bool>>>()?;
    let failed = results.iter().filter(|ok| !**ok).count();
    Ok(Check::with_status(
        "two_scale_exact",
        failed == 0,
        if failed == 0 { 0.0 } else { 1.0 },
        json!({ "relations": cases.len(), "mismatches": failed }),
    ))
}

/// `|A Θ - ⟨A Θ, Θ⟩ Θ|_2 / |A Θ|_2`, zero exactly when the output is proportional
/// to the wavelet.
pub fn projection_residual(output: &padicwave_core::TestFunction, theta: &padicwave_core::TestFunction) -> Result<f64> {
    let proj = output.inner_product(theta)?;
    let norm = output.l2_norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(output.l2_distance(&theta.scale(proj))? / norm)
}

/// Eigen criterion for one index, confirmed by applying the operator.
pub fn eigen_run(symbol: &Symbol, idx: &WaveletIndex, tol: f64) -> Result<Report> {
    let report = eigen_check(symbol, idx)?;
    let theta = wavelet(idx)?;
    let output = apply(symbol, &theta)?;
    let rel = projection_residual(&output, &theta)?;
    let proportional = rel <= tol;
    let mut checks = Vec::new();

    let witness = report.witness.as_ref().map(|b| {
        json!({
            "radius_exp": b.radius_exp(),
            "center": b.center().components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    });
    let eigen_dev = match (&report.eigenvalue, &report.witness) {
        (Some(_), _) => 0.0,
        (None, Some(w)) => {
            let at = symbol.eval(w.center())?;
            let base = symbol.eval(&padicwave_core::wavelets::eigen_frequency(idx))?;
            (at - base).norm()
        }
        (None, None) => f64::NAN,
    };
    checks.push(Check::with_status(
        "eigen_check",
        report.is_eigen,
        eigen_dev,
        json!({
            "index": idx.to_string(),
            "is_eigen": report.is_eigen,
            "eigenvalue": report.eigenvalue.map(|l| json!({ "re": l.re, "im": l.im })),
            "witness": witness,
        }),
    ));

    // the operator must agree with the criterion in both directions
    let apply_dev = match report.eigenvalue {
        Some(l) => output.l2_distance(&theta.scale(l))? / output.l2_norm().max(l.norm()).max(f64::MIN_POSITIVE),
        None => rel,
    };
    let agrees = proportional == report.is_eigen && (report.eigenvalue.is_none() || apply_dev <= tol);
    checks.push(Check::with_status(
        "apply_compare",
        agrees,
        apply_dev,
        json!({ "proportional": proportional, "projection_residual": rel }),
    ));

    if let (Symbol::Power(beta), Some(l)) = (symbol, report.eigenvalue) {
        let closed = closed_form_power_eigenvalue(idx.prime(), *beta, idx);
        let dev = (l - closed).norm() / closed.norm();
        checks.push(Check::within(
            "closed_form_eigenvalue",
            dev,
            tol,
            json!({ "closed_form": { "re": closed.re, "im": closed.im } }),
        ));
    }
    Ok(Report { checks })
}

/// `p^{β(max m - γ)}`.
pub fn closed_form_power_eigenvalue(p: Prime, beta: Complex64, idx: &WaveletIndex) -> Complex64 {
    let e = idx.s.max_m() as f64 - idx.gamma as f64;
    (beta * (e * p.ln())).exp()
}
