//! Operators `A f = F^{-1}[𝒜 F[f]]` on Lizorkin test functions, their action on
//! wavelets, and the Riesz kernels.

mod eigen;
mod gamma;
mod operator;
mod riesz;
mod symbol;

pub use eigen::{
    apply_and_compare, corollary3_check, eigen_check, eigenvalue, eigenvalues, homogeneity_check, ApplyComparison,
    EigenReport, EIGEN_TOL,
};
pub use gamma::{check_pole, gamma_p, nearest_pole, GammaValue, POLE_TOL};
pub use operator::{apply, taibleson, transpose, COVERAGE_TOL};
pub use riesz::{log_kernel_pairing, principal_value_pairing, riesz_kernel_pairing, riesz_pairing};
pub use symbol::{Symbol, SymbolCell, TabulatedSymbol};
