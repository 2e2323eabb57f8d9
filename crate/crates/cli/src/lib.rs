//! Command-line front end: exact Bernoulli numbers, certified double zeta
//! digits and verification suites with JSON, CSV or text reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or errors,
//! 2 for usage errors.

pub mod app;
pub mod config;
pub mod report;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dzv::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(dzv::Error::InvalidArgument(_)) => EXIT_USAGE,
            CliError::Core(dzv::Error::Divergent(_)) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }
}

pub use app::run_cli;
pub use config::{OutputFormat, RunConfig, Suite};
pub use report::{CheckRecord, SuiteReport};
