use thiserror::Error;

/// Errors surfaced by field construction, polynomial arithmetic and the
/// classification / construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),

    #[error("modulus is reducible: {0}")]
    ReducibleModulus(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("constant polynomial has no irreducibility verdict")]
    ConstantInput,

    #[error("zero element has no multiplicative order")]
    ZeroElementOrder,

    #[error("factorization modulus inconsistent with the element: {0}")]
    InconsistentFactorization(String),

    #[error("{what} out of desk range: {detail}")]
    OutOfRange { what: String, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),

    /// Signals a broken internal invariant (e.g. a norm-product coefficient
    /// not fixed by Frobenius, or a guaranteed-exact division leaving a
    /// remainder). Must be impossible on correct arithmetic.
    #[error("internal arithmetic check failed: {0}")]
    Internal(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn out_of_range(what: &str, detail: impl Into<String>) -> Error {
        Error::OutOfRange {
            what: what.to_string(),
            detail: detail.into(),
        }
    }
}
