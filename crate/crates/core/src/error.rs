use thiserror::Error;

use crate::scalar::FieldDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: FieldDescriptor,
        found: FieldDescriptor,
    },
    #[error("cannot parse {what}: {token:?}")]
    Parse { what: &'static str, token: String },
    #[error("{token:?} is not a residue modulo {modulus}")]
    NotAResidue { token: String, modulus: u64 },

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation requires a {expected} field, got {found}")]
    WrongField {
        expected: &'static str,
        found: FieldDescriptor,
    },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("characteristic {characteristic} too small to recover a degree-{degree} power")]
    CharacteristicTooSmall { characteristic: u64, degree: usize },

    #[error("expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid shape {rows}x{cols}: {reason}")]
    InvalidShape {
        rows: usize,
        cols: usize,
        reason: &'static str,
    },
    #[error("matrix is not Toeplitz")]
    NotToeplitz,
    #[error("matrix is not Hankel")]
    NotHankel,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("moment vector scale must be nonzero")]
    ZeroScale,
    #[error("diagonal ratio r must be nonzero")]
    ZeroRatio,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(&'static str),
    #[error("basis element {index} is not mapped to a Toeplitz matrix")]
    NotToeplitzClosed { index: usize },

    #[error("coordinate matrix of size {0} is too small (need at least 3)")]
    TooSmall(usize),
    #[error("coordinate matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("verdict is not a canonical preserver")]
    NotCanonical,

    #[error("{0} is infinite; enumeration requires a prime field")]
    InfiniteField(FieldDescriptor),
    #[error("enumeration of {required} items exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}
