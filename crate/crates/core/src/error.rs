//! Error type shared by every operation in the crate.
//!
//! Precondition and hypothesis failures are kept distinct from structural
//! input errors so that callers (the CLI in particular) can map them to
//! different exit paths: a hypothesis violation is a meaningful answer
//! about the input, a malformed matrix is not.

use thiserror::Error;

/// Everything that can go wrong while validating or computing.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A matrix or vector had the wrong dimension for the operation.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A matrix failed the Hermitian-symmetry invariant.
    #[error("matrix is not Hermitian: {0}")]
    NotHermitian(String),

    /// A tuple of matrices was structurally invalid (wrong count, mixed
    /// dimensions, empty where entries are required).
    #[error("malformed tuple: {0}")]
    MalformedTuple(String),

    /// The permutation-sum oracle was asked for a dimension above its cap.
    #[error("oracle cap exceeded: n = {n} is above the cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },

    /// Multiplicities in a compressed tuple do not sum to the required total.
    #[error("multiplicities sum to {found}, expected {expected}")]
    MultiplicitySum { expected: usize, found: usize },

    /// A semidefiniteness hypothesis required by the operation fails.
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    /// A precondition of the operation fails (for example a vanishing
    /// normalizing value that would force a division by zero).
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// A rational literal could not be parsed.
    #[error("invalid rational literal: {0:?}")]
    InvalidRational(String),

    /// The harness was asked for a suite name it does not know.
    #[error("unknown suite: {0:?}")]
    UnknownSuite(String),

    /// Any other validation failure.
    #[error("{0}")]
    Invalid(String),
}
