//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: dimension mismatches, out-of-range parameters.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Numerical breakdown, e.g. a non-positive Cholesky pivot or a zero
    /// diagonal entry. `index` identifies the offending row/pivot.
    #[error("{op}: numerical failure at index {index}")]
    Numerical { op: &'static str, index: usize },
    /// Outside the supported range (e.g. untabulated operation counts).
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
