use padicwave_core::Prime;

use crate::error::{CliError, Result};

/// Environment variable overriding the default tolerance; `--tol` wins over it.
pub const TOL_ENV: &str = "PADICWAVE_TOL";

pub const DEFAULT_BASIS_TOL: f64 = 1e-12;
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

/// Parameters of a randomized verification campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p: Prime,
    pub n: usize,
    /// `m_j` per axis.
    pub m: Vec<u32>,
    pub gamma_min: i64,
    pub gamma_max: i64,
    pub tol: f64,
    pub seed: u64,
    /// Number of sampled index pairs.
    pub pairs: usize,
    /// Number of sampled single indices for per-wavelet checks.
    pub trials: usize,
}

impl RunConfig {
    /// A single `m` is used on every axis.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p: u64,
        n: usize,
        m: Vec<u32>,
        gamma_min: i64,
        gamma_max: i64,
        tol: f64,
        seed: u64,
        pairs: usize,
        trials: usize,
    ) -> Result<Self> {
        let p = Prime::new(p).map_err(|e| CliError::Usage(e.to_string()))?;
        if n == 0 {
            return Err(CliError::Usage("dimension must be at least 1".into()));
        }
        let m = match m.len() {
            1 => vec![m[0]; n],
            k if k == n => m,
            k => return Err(CliError::Usage(format!("{} values of m for dimension {}", k, n))),
        };
        if m.iter().any(|&mj| mj == 0) {
            return Err(CliError::Usage("every m_j must be at least 1".into()));
        }
        if p.checked_pow(m.iter().copied().max().unwrap_or(1)).is_none() {
            return Err(CliError::Usage("p^m overflows".into()));
        }
        if gamma_min > gamma_max {
            return Err(CliError::Usage(format!("empty scale range [{}, {}]", gamma_min, gamma_max)));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", tol)));
        }
        Ok(RunConfig { p, n, m, gamma_min, gamma_max, tol, seed, pairs, trials })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(matches!(RunConfig::new(4, 1, vec![1], 0, 1, 1e-12, 0, 1, 1), Err(CliError::Usage(m)) if m.contains("not prime")));
        assert!(RunConfig::new(3, 1, vec![1], 2, 1, 1e-12, 0, 1, 1).is_err());
        assert!(RunConfig::new(3, 2, vec![1, 2, 3], 0, 1, 1e-12, 0, 1, 1).is_err());
        assert!(RunConfig::new(3, 1, vec![1], 0, 1, 0.0, 0, 1, 1).is_err());
        assert_eq!(RunConfig::new(3, 2, vec![2], 0, 1, 1e-12, 0, 1, 1).unwrap().m, vec![2, 2]);
    }
}
