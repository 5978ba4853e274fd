use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("truncation orders differ: {0} vs {1}")]
    MixedOrder(usize, usize),
    #[error("unsupported prime {p}: {reason}")]
    UnsupportedPrime { p: u64, reason: String },
    #[error("not a group member: {0}")]
    Membership(String),
    #[error("degenerate point: {0}")]
    Degenerate(String),
    #[error("reduction failed: {0}")]
    ReductionFailure(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
