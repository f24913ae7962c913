//! Command line front end, graph IO and parallel census runs for `cospec-core`.

pub mod census;
pub mod error;
pub mod format;
pub mod io;
pub mod properties;
pub mod verify;

pub use error::{CliError, CliResult};
