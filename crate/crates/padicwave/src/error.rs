use std::path::PathBuf;

use padicwave_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NOT_LIZORKIN: i32 = 3;
    pub const COVERAGE: i32 = 4;
    pub const POLE: i32 = 5;
    pub const NON_INVERTIBLE: i32 = 6;
    pub const IO: i32 = 7;
    /// Any other library error (not an eigenfunction, residual too large, …).
    pub const OTHER: i32 = 8;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } | CliError::Parse(_) | CliError::Json(_) | CliError::Csv(_) => exit::IO,
            CliError::Core(e) => match e {
                CoreError::NotPrime(_) | CoreError::InvalidTolerance(_) | CoreError::EmptyRange => exit::USAGE,
                CoreError::NotLizorkin { .. } => exit::NOT_LIZORKIN,
                CoreError::Coverage(_) | CoreError::InvalidRefinement { .. } => exit::COVERAGE,
                CoreError::Pole { .. } => exit::POLE,
                CoreError::NonInvertible { .. } => exit::NON_INVERTIBLE,
                _ => exit::OTHER,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
