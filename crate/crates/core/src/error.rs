use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps [`Error::Input`] to exit code 2; everything else counts as a
/// failed verification (exit code 1).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: shape mismatch, bad index, unparsable file.
    #[error("input error: {0}")]
    Input(String),

    /// Input is well-formed but outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative routine failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// An associator outside the stored truncation level was requested.
    #[error("truncation error: a_{{{p},{q}}} is beyond level {level}")]
    Truncation { p: usize, q: usize, level: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by malformed user input.
    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Json(_) | Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
