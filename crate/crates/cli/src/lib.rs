//! Experiment runner: sweeps the search circuits over widths and answers and
//! checks each claim in `docs/claims.json` against the measurements.

pub mod claims;
pub mod config;
pub mod report;
mod runner;

pub use claims::Verdict;
pub use config::{Algorithm, AnswerMode, ExperimentConfig, Format, Overrides};
pub use report::{emit_report, render, ClaimReport, Report};
pub use runner::run_experiment;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("I/O: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] qsearch::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub mod exit {
    pub const PASS: i32 = 0;
    pub const CLAIM_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const WITNESS_DISAGREEMENT: i32 = 3;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_domain() => exit::WITNESS_DISAGREEMENT,
            _ => exit::USAGE,
        }
    }
}

/// Exit code for a finished report.
pub fn report_exit_code(report: &Report) -> i32 {
    if report.all_pass() {
        exit::PASS
    } else {
        exit::CLAIM_FAILED
    }
}
