//! Cauchy problems, problem files and the `opreduce` command line on top of
//! `opreduce-core`.

pub mod cauchy;
mod cli;
pub mod format;
pub mod verify;

pub use cli::{run_cli, run_cli_with, EXIT_INPUT, EXIT_OK, EXIT_VERIFY_FAILED};
pub use opreduce_core as core;
