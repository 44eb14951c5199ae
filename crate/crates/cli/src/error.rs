//! CLI error type and its mapping to exit codes.

use thiserror::Error;

/// Exit code for malformed or out-of-domain arguments.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for numerical failures and I/O problems.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] nicholson_core::Error),

    #[error("coefficient cache {path}: {message}")]
    Cache { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),

    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Hypothesis and domain violations reported by the library are argument
    /// errors; only convergence failures and I/O count as run-time failures.
    pub fn exit_code(&self) -> i32 {
        use nicholson_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(E::NonConvergence(_) | E::NoConvergence(_)) => EXIT_FAILURE,
            CliError::Core(_) => EXIT_USAGE,
            CliError::Cache { .. } | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_FAILURE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
