//! Command-line front end: run configuration, CSV and SVG export, the
//! commands behind the `tricycle` binary and the acceptance criteria.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod svg;
pub mod table;

pub use commands::Report;
pub use config::{Overrides, RunConfig};
pub use error::{CliError, Result};
