//! The additive character and the Fourier transform on test functions.

mod character;
mod dft;
mod transform;

pub use character::{character, chi_p, CharacterValue};
pub(crate) use character::root_of_unity;
pub use dft::{naive_dft, Direction, RadixPlan};
pub use transform::{
    affine_fourier_law_check, diagonal_pullback, fourier, fourier_at, fourier_exact, fourier_naive,
    inverse_fourier, inverse_fourier_exact, inverse_fourier_naive, transform, AffineLawReport, Kernel,
};
