//! Error type shared by every fallible operation in the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input violates a documented precondition (size mismatch, non-convex
    /// point set, invalid permutation, odd Partition sum, ...).
    InvalidInput(String),
    /// An exhaustive enumeration was requested above its configured cap.
    LimitExceeded(String),
    /// A constrained search has an empty feasible set.
    Infeasible(String),
    /// Internal inconsistency (e.g. corrupted DP choice tables).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::LimitExceeded(msg) => write!(f, "limit exceeded: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
