//! Locally constant, compactly supported functions on `Q_p^n`.

mod exact;
mod grid_function;
mod test_function;

pub use exact::{Cyclotomic, ExactFunction};
pub(crate) use exact::rational_to_f64;
pub use grid_function::{common_grid, CellValue, GridFunction};
pub use test_function::{TestFunction, LIZORKIN_TOL};
