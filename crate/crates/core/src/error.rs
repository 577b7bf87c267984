//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by construction and computation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values built over different variable counts were combined.
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    /// A parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The request exceeds a guarded capacity limit.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    /// An operation that requires a minimal generating set was given an ideal
    /// not flagged minimal.
    #[error("ideal is not minimal; minimalize it first")]
    NotMinimal,
    /// Exact integer arithmetic overflowed.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    /// An internal consistency check failed.
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
