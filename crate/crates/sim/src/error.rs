//! Harness errors, mapped onto the CLI exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    /// Bad configuration or malformed inputs (exit code 2).
    #[error("configuration error: {0}")]
    Config(String),
    /// Numerical failure inside a run, with frame context (exit code 3).
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Filesystem trouble writing results.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl SimError {
    /// Process exit code per the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Config(_) => 2,
            SimError::Numerical(_) => 3,
            SimError::Io { .. } => 1,
        }
    }
}

impl From<sorlink::Error> for SimError {
    fn from(e: sorlink::Error) -> Self {
        match e {
            sorlink::Error::Numerical { .. } => SimError::Numerical(e.to_string()),
            _ => SimError::Config(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, SimError>;
