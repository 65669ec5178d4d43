use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use thiserror::Error;

use crate::padic::Ball;
use crate::wavelets::WaveletIndex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("valuation undefined for zero")]
    ZeroValuation,
    #[error("empty digit range: requested precision {precision} below valuation {valuation}")]
    EmptyDigitRange { precision: i64, valuation: i64 },
    #[error("invalid refinement: cell exponent {cell} exceeds radius exponent {radius}")]
    InvalidRefinement { cell: i64, radius: i64 },
    #[error("grid with {digits} digits per axis in dimension {dim} exceeds the supported size")]
    GridTooLarge { digits: i64, dim: usize },
    #[error("coefficient table has {got} entries, grid needs {expected}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("coefficient at cell {0} is not finite")]
    NonFinite(usize),
    #[error("invalid digit {digit} for prime {p}")]
    InvalidDigit { digit: u64, p: u64 },
    #[error("invalid frequency index: {0}")]
    InvalidFrequency(String),
    #[error("invalid translation index: {0}")]
    InvalidTranslation(String),
    #[error("empty range")]
    EmptyRange,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("function is not in the Lizorkin space (integral {integral})")]
    NotLizorkin { integral: Complex64 },
    #[error("symbol does not cover the frequency cell {0}")]
    Coverage(Ball),
    #[error("symbol evaluated at the origin")]
    Origin,
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("pole at alpha = {alpha}: nearest mu_j has j = {j}")]
    Pole { alpha: Complex64, j: i64 },
    #[error("symbol failed the homogeneity check for degree {0}")]
    NotHomogeneous(Complex64),
    #[error("wavelet {index} is not an eigenfunction of the symbol")]
    NotEigen { index: WaveletIndex, witness: Option<Ball> },
    #[error("non-invertible on truncated span: {} indices carry energy {energy}", indices.len())]
    NonInvertible { indices: Vec<WaveletIndex>, energy: f64 },
    #[error("residual {residual} exceeds tolerance {tolerance}")]
    ResidualExceeded { residual: f64, tolerance: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("exact mode requires {0}")]
    ExactUnsupported(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
