use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised across the library.
///
/// `NotApplicable` is a precondition outcome, not a defect: a theorem's
/// hypotheses do not hold for the given input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(BigInt),
    #[error("factorization of {n} left composite cofactor {cofactor} above trial bound {bound}")]
    FactorizationIncomplete {
        n: BigInt,
        cofactor: BigInt,
        bound: u64,
    },
    #[error("expected a positive integer, got {0}")]
    NonPositive(BigInt),
    #[error("d = {0} is not a square-free integer other than 0 and 1")]
    InvalidDiscriminant(BigInt),
    #[error("a + b must be even when d = {d} is 1 mod 4, got a = {a}, b = {b}")]
    ParityViolation { a: BigInt, b: BigInt, d: BigInt },
    #[error("operands live in different fields (d = {0} vs d = {1})")]
    FieldMismatch(BigInt, BigInt),
    #[error("the norm parameter s must be nonzero")]
    ZeroNorm,
    #[error("index must be odd, got {0}")]
    EvenIndex(u64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no index below the ceiling {ceiling} satisfies the condition")]
    CeilingExceeded { ceiling: u64 },
    #[error("alpha^nu never lies in the order: prime {p} divides the norm but not the trace")]
    Unreachable { p: BigInt },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
