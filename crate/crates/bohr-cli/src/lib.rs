//! Command-line driver for `bohr-core`.
//!
//! Parses a [`RunConfig`], runs the requested table or sweep on a rayon
//! pool, and writes `<command>-<seed>.csv` or `.json` into the output
//! directory. Sweeps are deterministic: each sample draws from its own
//! stream and partial reports are merged in sample order, so the output
//! does not depend on the thread count.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use commands::{build, run, Outcome};
pub use config::{Check, Command, Options, OutputFormat, RunConfig};
pub use error::CliError;
pub use output::Table;
