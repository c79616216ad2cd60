use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by how callers are expected to react: `InvalidInput`
/// and the parse variants indicate unusable arguments or files,
/// `GuardExceeded` indicates a combinatorial budget was hit before an answer
/// was reached, and `VerificationFailed` indicates a checked property did not
/// hold.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("guard exceeded: {what} ({limit} allowed, {requested} requested)")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
