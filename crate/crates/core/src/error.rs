use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("field of {0} elements exceeds the 2^31 cap")]
    FieldTooLarge(u128),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInversion,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("enumeration of {size} items exceeds the guard {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },
    #[error("input polynomial is not irreducible")]
    ReducibleInput,
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("polynomial has the wrong shape: {0}")]
    BadShape(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is too large to factor by trial division")]
    FactorizationCap(u128),
    #[error("m must exceed 1, got {0}")]
    MOutOfRange(usize),
    #[error("main term constant is not determined for {0}")]
    UnknownConstant(String),
    #[error("invalid TSR: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
