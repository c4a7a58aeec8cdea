//! Command-line front end: figure data, solvers, certificates, scans and
//! orbit searches, written as CSV or JSON.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod files;
pub mod format;

pub use commands::{run, Streams};
pub use error::{exit, CliError, CliResult};
