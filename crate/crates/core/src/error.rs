use thiserror::Error;

use crate::tri::TriClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported qubit count {0} (expected 1..=4)")]
    UnsupportedQubitCount(usize),

    #[error("qubit index {qubit} out of range for a {n}-qubit state")]
    InvalidQubit { qubit: usize, n: usize },

    #[error("local operator on qubit {qubit} is singular (|det| = {det:e})")]
    SingularOperator { qubit: usize, det: f64 },

    #[error("state vector is zero")]
    ZeroState,

    #[error("exactly two W clauses hold ({clauses:?}); the tolerance straddles a class boundary")]
    AmbiguousClassification { clauses: [bool; 3] },

    #[error("quartic form vanishes identically")]
    IdenticallyZero,

    #[error("residual states span a one-dimensional space")]
    CollinearSpan,

    #[error("generic pencil type unstable: probes gave {first} and {second}")]
    GenericTypeUnstable { first: TriClass, second: TriClass },

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("family constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
