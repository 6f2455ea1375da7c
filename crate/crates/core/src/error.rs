use alloc::string::String;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("norm along the identity exponent is undefined")]
    DegenerateNorm,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("validation failed: {}", .0.summary())]
    Validation(ValidationReport),
    #[error("composite rejected: {0}")]
    Rejected(String),
    /// A step that the underlying algebra guarantees has failed anyway.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
