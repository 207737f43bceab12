use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An input failed a precondition or invariant check.
    #[error("validation: {0}")]
    Validation(String),

    /// A matrix dimension would exceed the configured cap.
    #[error("dimension {requested} exceeds cap {cap}")]
    Capacity { requested: usize, cap: usize },

    /// A data file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
