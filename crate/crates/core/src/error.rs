use thiserror::Error;

/// Errors shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid input parameters (bad shape, non-prime modulus, out of range index, ...).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A configured work limit would be exceeded.
    #[error("budget exceeded: {what} needs {required} units, limit is {limit}")]
    Budget {
        what: String,
        required: u128,
        limit: u128,
    },
    /// Repeated random draws failed to produce a usable object.
    #[error("degenerate random draw: {0}")]
    Degenerate(String),
    /// Two independent results contradict each other.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn budget(what: impl Into<String>, required: u128, limit: u128) -> Self {
        Error::Budget {
            what: what.into(),
            required,
            limit,
        }
    }

    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parameter(_) => "parameter",
            Error::Budget { .. } => "budget",
            Error::Degenerate(_) => "degenerate",
            Error::Inconsistent(_) => "inconsistent",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
