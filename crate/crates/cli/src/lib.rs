//! File formats, command dispatch and the bounded Galois round-trip check
//! behind the `galois` binary.

pub mod check;
pub mod commands;
pub mod error;
pub mod format;
pub mod workspace;

pub(crate) use galois_core::clone;

pub use check::{galois_check, GaloisReport, Side, Status};
pub use commands::{execute, limits_from_env, run_command, Cli, Command, Outcome};
pub use error::{CliError, Result};
pub use workspace::{load_workspace, Caps, Workspace};
