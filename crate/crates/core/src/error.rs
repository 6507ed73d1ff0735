use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad input from the caller: malformed files, wrong arities, invalid
    /// parameters.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("improper ideal: {0}")]
    ImproperIdeal(String),

    /// A randomized step did not land in the generic locus within its retry
    /// budget.
    #[error("genericity failure: {0}")]
    Genericity(String),

    /// A degree scan hit its ceiling before the answer was certified.
    #[error("truncated: {0}")]
    Truncated(String),

    /// Two independent computations of the same quantity disagree.
    #[error("computational defect: {0}")]
    Defect(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    /// Process exit code for the command-line front end: 2 for anything the
    /// caller can fix, 1 for a computational failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse { .. } | Error::ImproperIdeal(_) => 2,
            Error::Genericity(_) | Error::Truncated(_) | Error::Defect(_) => 1,
        }
    }
}
