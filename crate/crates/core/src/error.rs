use thiserror::Error;

/// Errors produced by the engines in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A coordinate or state outside the space it was used in.
    #[error("domain error: {0}")]
    Domain(String),
    /// A precondition on an argument was violated.
    #[error("argument error: {0}")]
    Argument(String),
    /// Some inverse fiber of a finite system would be empty.
    #[error("not invertible: state {state:?} has no incoming edge")]
    NotInvertible { state: String },
    /// Some inverse fiber of a piecewise-linear map would be empty.
    #[error("not invertible: y-range {uncovered} is not covered by the graph")]
    NotInvertiblePl { uncovered: String },
    /// A truncated inverse-limit point has no admissible next coordinate.
    #[error("dead end: coordinate {0} has no continuation")]
    DeadEnd(String),
    /// Malformed system description; `path` is the JSON path of the offending value.
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
