use thiserror::Error;

/// Errors raised by the library.
///
/// The variants line up with the CLI exit codes: configuration problems are
/// usage errors (2), contract and structural violations are caller bugs, and
/// internal errors signal a broken invariant inside the library (3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid user-facing parameters (prime, n, epsilon, truncation bounds).
    #[error("configuration error: {0}")]
    Config(String),
    /// A precondition of an operation was not met by its arguments.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Elements or maps were combined across incompatible rings.
    #[error("structural error: {0}")]
    Structural(String),
    /// An invariant that the library itself is responsible for failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for a run that stopped on this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io(_) => 2,
            Error::Contract(_) | Error::Structural(_) | Error::Internal(_) => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
