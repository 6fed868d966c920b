use std::io;

use motifnet_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("verification failed: {failed} of {total} checks did not pass")]
    VerifyFailed { failed: usize, total: usize },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: 1 for bad input, 2 for capacity, 3 for a failed
    /// verification, 4 for output errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Capacity(_) => 2,
            CliError::VerifyFailed { .. } => 3,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CapacityExceeded { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
