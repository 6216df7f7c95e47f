use std::path::PathBuf;

use purcellnet::{AnalysisError, BudgetError, FieldError, NetworkError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Process exit status for this failure; usage errors (2) are reported by the argument parser.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Inconsistent(_) => 5,
            CliError::Io { .. } => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<NetworkError> for CliError {
    fn from(e: NetworkError) -> Self {
        match e {
            NetworkError::InvalidElement(_) | NetworkError::InvalidFrequency(_) => CliError::Validation(e.to_string()),
            NetworkError::Singularity { .. } | NetworkError::NumericOverflow { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Network(n) => n.into(),
            AnalysisError::InvalidParameter(_)
            | AnalysisError::InvalidSweep(_)
            | AnalysisError::Resolution { .. }
            | AnalysisError::Coverage { .. } => CliError::Validation(e.to_string()),
            AnalysisError::PassivityViolation { .. } | AnalysisError::Resonance | AnalysisError::Search(_) => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

impl From<BudgetError> for CliError {
    fn from(e: BudgetError) -> Self {
        match e {
            BudgetError::InvalidMeasurement(_) => CliError::Validation(e.to_string()),
            BudgetError::Inconsistent { .. } => CliError::Inconsistent(e.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Degenerate => CliError::Numeric(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}
