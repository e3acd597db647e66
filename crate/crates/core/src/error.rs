use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the engine.
///
/// The variants fall into four classes that the command-line tool maps onto
/// exit codes: usage problems, capacity limits, falsification events (a
/// guaranteed property failed to hold, which always indicates a bug), and
/// I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} needs {needed} but the cap is {limit}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        limit: u64,
    },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("element is not stable under the acting group")]
    NotStable,

    #[error("splitting requires field degree {degree}")]
    NeedsExtension { degree: usize },

    #[error("field degree {have} does not split the algebra (needs {need})")]
    FieldTooSmall { have: usize, need: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("falsified: {0}")]
    Falsified(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn falsified(msg: impl Into<String>) -> Self {
        Error::Falsified(msg.into())
    }

    /// Process exit code for this error: 1 falsification, 2 usage, 3 caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Falsified(_) => 1,
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}
