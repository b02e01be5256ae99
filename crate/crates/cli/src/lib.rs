//! Command-line front end for `mixstate`: file formats, state families,
//! figure data and command dispatch.

pub mod commands;
pub mod error;
pub mod family;
pub mod figures;
pub mod files;

pub use commands::{execute, Cli, Command};
pub use error::{CliError, EXIT_INVALID, EXIT_IO};
pub use files::{CircuitFile, DensityMatrixFile};
