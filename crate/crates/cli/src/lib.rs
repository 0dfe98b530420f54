//! Library side of the `monodromy` binary: subcommands, report types and the
//! model dump format.

pub mod commands;
pub mod dump;
pub mod report;

pub use commands::{cmd_annihilate, cmd_minimal, cmd_model, cmd_sweep, CliError, Context};
pub use report::{AnnihilateReport, CheckEntry, Report, SweepSummary};
