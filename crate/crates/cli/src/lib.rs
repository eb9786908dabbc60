//! Configuration, experiment orchestration and artifact emission for the
//! `magbill` command-line tool.

pub mod config;
pub mod experiments;
pub mod report;
pub mod svg;

pub use config::{ExperimentConfig, ExperimentKind};
pub use experiments::{run, Artifacts};
pub use report::{Check, Report, Verdict};

/// Everything that can stop a run before or while artifacts are produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The configuration is unusable; maps to exit code 2.
    #[error("invalid configuration: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] magbill::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
