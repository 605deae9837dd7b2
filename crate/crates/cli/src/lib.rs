//! Command-line surface for the `hurwitz` library.
//!
//! Every subcommand is a function from parsed arguments to an [`Outcome`]
//! (captured stdout, stderr and exit code), so the binary is a thin wrapper
//! and the commands are testable in-process.
//!
//! Exit codes: 0 success, 1 mathematical mismatch or refutation, 2 usage
//! error.

pub mod bfile;
pub mod checks;
mod commands;

pub use commands::{run, Cli, Command, Outcome, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
