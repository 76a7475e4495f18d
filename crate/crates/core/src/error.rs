//! Error type shared by all algebra operations.

use thiserror::Error;

/// Errors raised by ring, ideal and module operations.
///
/// Structural errors (mismatched rings, bad arguments) and mathematical
/// precondition failures (non-Artinian input where finiteness is required)
/// are kept distinct from negative answers: a failed Gorenstein test is a
/// verdict, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime field modulus {0} out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),
    #[error("scalar does not belong to field {0}")]
    FieldMismatch(String),
    #[error("division by zero in coefficient field")]
    DivisionByZero,
    #[error("denominator {0} is zero modulo the field characteristic")]
    NonInvertibleDenominator(String),
    #[error("exponent vectors have different lengths ({0} vs {1})")]
    ExponentLength(usize, usize),
    #[error("polynomial ring must have at least one variable")]
    NoVariables,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("elimination block of {block} variables does not fit a ring with {nvars} variables")]
    BadEliminationBlock { block: usize, nvars: usize },
    #[error("colon by the zero ideal")]
    ColonByZeroIdeal,
    #[error("the defining ideal is the unit ideal; the quotient ring is zero")]
    UnitQuotient,
    #[error("every generator is zero in the quotient ring")]
    ZeroPresentation,
    #[error("ring is not Artinian local")]
    NotArtinianLocal,
    #[error("quotient ring has infinite vector-space dimension")]
    InfiniteDimensional,
    #[error("equivalence sweep needs a monomial defining ideal")]
    NonMonomialIdeal,
    #[error("matrix shape mismatch: expected {expected} entries, got {got}")]
    MatrixShape { expected: usize, got: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
