use alloc::string::String;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("a square root of {0} must be adjoined")]
    ExtensionNeeded(Scalar),
    #[error("characteristic {characteristic} divides the degree {degree}")]
    CharacteristicDividesDegree { characteristic: u64, degree: u32 },
    #[error("characteristic 2 is not supported")]
    Characteristic2,
    #[error("field lacks √−1")]
    NoSqrtMinusOne,
    #[error("empty sum of products")]
    EmptyDecomposition,
    #[error("integer overflow")]
    Overflow,
    #[error("matrix entries must be zero or linear forms")]
    NonLinearEntry,
    #[error("matrix is not square or has the wrong size")]
    Shape,
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
