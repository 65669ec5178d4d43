//! The wavelet bases `Θ_{γsa}` of `L^2(Q_p^n)`, their Fourier transforms,
//! two-scale relations and finite expansions.

mod basis;
mod expansion;
mod index;
mod two_scale;

pub use basis::{eigen_frequency, frequency_ball, wavelet, wavelet_exact, wavelet_fourier};
pub use expansion::{
    analyze, enumerate_indices, frequency_count, omega_parseval, omega_parseval_tail, reconstruction_residual,
    synthesize, CoefficientMap, ParsevalWitness,
};
pub use index::{FrequencyIndex, TranslationIndex, WaveletIndex};
pub use two_scale::{two_scale_coefficients, TwoScaleRelation};
