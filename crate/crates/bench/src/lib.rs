//! Experiment harness: configuration, seeded run matrices, result files and
//! reports.

pub mod config;
pub mod error;
pub mod format;
pub mod records;
pub mod registry;
pub mod report;
pub mod runner;

pub use error::{BenchError, Result};
