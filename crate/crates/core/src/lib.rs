//! Bohr-radius constants and numerical verification of Bohr and Rogosinski
//! type inequalities for matrix-valued bounded holomorphic functions on the
//! unit disk.
//!
//! The crate is `no_std` (it needs `alloc`). Matrix-valued functions are
//! represented as truncated power series with dense complex `d × d`
//! coefficients; the norm on coefficients is always the operator norm.
//!
//! Modules, bottom-up:
//!
//! * [`numerics`]: dense complex matrices, operator norm, bisection and
//!   grid-plus-golden-section minimization.
//! * [`series`]: matrix power series algebra, composition with Schwarz
//!   functions, majorant series and the test-function generators.
//! * [`radii`]: the scalar constants `ξ_p` and `r*_N`, per-function and
//!   family p-Bohr radii of order N, the convexity constant estimator, the
//!   bound-chain checks and the `ℓ_q²` vanishing-radius witness.
//! * [`inequalities`]: verifiers that return [`VerificationReport`]s.
#![cfg_attr(not(test), no_std)]
// NaN-rejecting guards are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod inequalities;
pub(crate) mod math;
pub mod numerics;
pub mod radii;
pub mod rng;
pub mod series;

pub use error::{Error, Result};
pub use inequalities::{Mode, Status, VerificationReport, Violation};
pub use numerics::{Bracket, ComplexMatrix};
pub use series::{MatrixPowerSeries, SchwarzSeries};

pub use num_complex::Complex64;
