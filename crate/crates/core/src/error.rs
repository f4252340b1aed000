use thiserror::Error;

/// Failure modes shared by every stage of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact: {0}")]
    Division(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid design parameters: {0}")]
    Param(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("elimination failed: {0}")]
    EliminationFailure(String),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("spurious root: {0}")]
    SpuriousRoot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
