//! Exact p-adic harmonic analysis at finite resolution.
//!
//! Test functions on `Q_p^n` are stored as tables over canonical coset grids;
//! everything p-adic (valuations, fractional parts, cell lookup) is exact rational
//! arithmetic, and only the complex cell values are floating point.

#![no_std]

extern crate alloc;

pub mod error;
pub mod fourier;
pub mod function;
pub mod padic;
pub mod prime;
pub mod pseudodiff;
pub mod solver;
pub mod wavelets;

pub use error::{Error, Result};
pub use function::{Cyclotomic, ExactFunction, GridFunction, TestFunction};
pub use padic::{Ball, BallRelation, CosetGrid, PAdicScalar, PAdicVector};
pub use prime::Prime;
pub use wavelets::{FrequencyIndex, TranslationIndex, WaveletIndex};
