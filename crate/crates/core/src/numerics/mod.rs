//! Dense complex linear algebra and guaranteed scalar root finding and
//! minimization.

mod matrix;
mod norm;
mod scalar;

pub use matrix::{ComplexMatrix, MatrixOp};
pub use norm::{operator_norm, operator_norm_with_cap, DEFAULT_MAX_ITERATIONS, DEFAULT_NORM_TOL};
pub use scalar::{bisect_interval, bisect_root, minimize_1d, Bracket, DEFAULT_GRID_POINTS};
