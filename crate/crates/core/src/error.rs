use thiserror::Error;

/// Errors for invalid input and unmet preconditions. Negative answers to
/// decision questions are [`crate::verdict::Verdict`]s, not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the term 1 has no variable")]
    NoVariable,
    #[error("{0} is not an element of the term set")]
    NotMember(String),
    #[error("the ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("the ideal is not quasi-stable: generator {generator} fails for variable index {variable}")]
    NotQuasiStable { generator: String, variable: usize },
    #[error("completion exceeded {0} elements")]
    CompletionLimit(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid term order: {0}")]
    InvalidOrder(String),
    #[error("malformed reduction structure: {0}")]
    Malformed(String),
    #[error("invalid marked set: {0}")]
    InvalidMarkedSet(String),
    #[error("ordering violation: {0}")]
    OrderingViolation(String),
    #[error("exact verification is unsupported for this ordering function")]
    ExactUnsupported,
    #[error("missing certificate: {0}")]
    MissingCertificate(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("{0}")]
    Builder(String),
    #[error("step budget of {budget} exhausted{context}")]
    BudgetExceeded { budget: u64, context: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
