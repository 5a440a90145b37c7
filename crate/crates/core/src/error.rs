use thiserror::Error;

/// Errors raised by the numerical routines and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("accuracy error: {msg} (achieved {achieved:.3e})")]
    Accuracy { msg: String, achieved: f64 },
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("unbounded tail: {0}")]
    UnboundedTail(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("series horizon exceeded: {0}")]
    Horizon(String),
    #[error("distributional value: {0}")]
    Distributional(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn accuracy(msg: impl Into<String>, achieved: f64) -> Self {
        Error::Accuracy {
            msg: msg.into(),
            achieved,
        }
    }

    /// Process exit code used by the CLI: 2 configuration, 3 numerical accuracy, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Range(_) | Error::Config(_) | Error::Unsupported(_) => 2,
            Error::Accuracy { .. }
            | Error::Integrity(_)
            | Error::UnboundedTail(_)
            | Error::Horizon(_)
            | Error::Distributional(_) => 3,
            Error::Io(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
