//! Exact p-adic arithmetic over the rationals and the ball geometry of `Q_p^n`.

pub(crate) mod arith;
mod ball;
mod grid;
mod scalar;
mod vector;

pub use ball::{Ball, BallRelation};
pub use grid::{canonical_cover, CosetGrid, MAX_CELLS};
pub use scalar::PAdicScalar;
pub use vector::PAdicVector;

