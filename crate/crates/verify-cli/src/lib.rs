//! Named verification scenarios behind the `verify` binary.

pub mod config;
pub mod report;
pub mod scenarios;

use thiserror::Error;

pub use config::{Cli, Format, Scenario, ScenarioConfig};
pub use report::{emit_report, Outcome, Row, VerificationReport};
pub use scenarios::run_scenario;

/// Exit status for usage and input errors.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scenario(#[from] thickening::ScenarioError),
    #[error(transparent)]
    Cech(#[from] thickening::CechError),
    #[error(transparent)]
    Localize(#[from] thickening::localize::LocalizeError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}
