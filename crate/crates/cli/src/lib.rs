//! Command-line front end: expression parsing, configuration, presets and
//! the verification suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
pub mod report;
pub mod verify;

pub use error::{CliError, CliResult};
