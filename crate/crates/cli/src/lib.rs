//! Report formats and command runners behind the `comaxdom` binary.

pub mod commands;
pub mod output;
pub mod parallel;
pub mod report;
pub mod svg;
pub mod tabular;

pub use commands::{CliError, ExitCode};
pub use report::{RunReport, SweepReport};
