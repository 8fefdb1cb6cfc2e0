//! Crate-wide error type.

use crate::algebra::field::{FieldError, SplitRequest};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Dynamic evaluation discovered a proper factor of a minimal polynomial;
    /// the enclosing computation re-runs over the branch towers.
    #[error("field split requested at tower level {}", .0.level)]
    Split(SplitRequest),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("coordinate change matrix is not invertible")]
    SingularChange,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("curve is not invariant for the foliation")]
    NotInvariant,
    #[error("curve is invariant for the foliation")]
    Invariant,
    #[error("curve germ is reducible: {0}")]
    Reducible(String),
    #[error("curve is required to be a smooth branch")]
    NotSmooth,
    #[error("malformed 1-form: {0}")]
    MalformedOneForm(String),
    #[error("maximum blow-up depth {0} exceeded")]
    MaxDepthExceeded(usize),
    /// Depth guard tripped during reduction; carries the partial tree for
    /// diagnosis.
    #[error("maximum blow-up depth {limit} exceeded (partial tree: {} points)", .partial.nodes.len())]
    MaxDepthWithPartial {
        limit: usize,
        partial: Box<crate::resolution::ReductionTree>,
    },
    #[error("divisor is not adapted to the requested branch")]
    NotAdapted,
    #[error("divisor failed balancedness validation: {0}")]
    NotBalanced(String),
    #[error("branch attaches to no divisor component")]
    NoAttachment,
    #[error("invalid input: {0}")]
    Input(String),
    /// Two independent algorithms for the same quantity disagreed. This is a
    /// bug trap and should never fire.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl From<FieldError> for Error {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Split(req) => Error::Split(req),
            FieldError::DivisionByZero => Error::DivisionByZero,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
