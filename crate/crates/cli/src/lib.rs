//! Command-line driver for `tripleslit-core`: config files with unit
//! suffixes, parameter scans run in parallel, CSV tables with a provenance
//! header, and gnuplot scripts to plot them.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod units;

pub use commands::{execute, Command};
pub use config::{GouyMode, RunConfig};
pub use error::{CliError, Result};
