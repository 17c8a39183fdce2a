use thiserror::Error;

/// Errors shared by all modules of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unfaithful eigenbasis expansion: coefficient mass deficit {deficit:.3e}")]
    UnfaithfulExpansion { deficit: f64 },
    #[error("closed-form eigenstates exist only for the singular model (epsilon = 0); use the regularized solver")]
    UnsupportedForRegularized,
    #[error("unsupported parameter range: {0}")]
    UnsupportedRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
