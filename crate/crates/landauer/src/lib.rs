//! Command-line driver for `landauer-core`: parameter sweeps, erasure and
//! capacity reports, Monte Carlo checks, and their CSV/JSON output with
//! reproducible run manifests.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod output;

pub use cli::main_with_args;
pub use error::{CliError, CliResult};
pub use manifest::RunManifest;
