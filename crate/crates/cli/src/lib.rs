//! Command implementations for the `mcg` binary.

pub mod catalog;
pub mod check;
pub mod commands;
pub mod load;
pub mod report;

pub use load::{CliError, CliResult};
pub use report::Report;
