//! Sweeps, reports and figures for the `hawksteer` command-line tool.

pub mod app;
pub mod error;
pub mod plot;
pub mod report;
pub mod selfcheck;
pub mod sweep;
pub mod threads;

pub use error::{CliError, Result};
pub use sweep::{Measures, SweepConfig, SweepRecord};
