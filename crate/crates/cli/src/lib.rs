//! File formats, seeded generators, run reports, the benchmark pipeline and
//! the command-line front end for `centdian-core`.
//!
//! Instance files are plain text: optional `#` comment lines, a header line
//! `n m`, then `m` lines `u v w` with 0-based endpoints and a nonnegative
//! length.

pub mod bench;
pub mod cli;
pub mod error;
pub mod generate;
pub mod instance;
pub mod report;

pub use cli::{run_command, CommandOutput};
pub use error::{CliError, Result};
