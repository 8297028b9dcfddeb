use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field of size {p}^{r} exceeds the supported maximum of 2^20")]
    FieldTooLarge { p: u64, r: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("zero has no multiplicative order")]
    ZeroHasNoOrder,
    #[error("gcd({m}, {t}) != 1")]
    NotCoprime { m: u64, t: u64 },
    #[error("X^{n}-1 is not separable over GF({q}) (gcd(n, q) != 1)")]
    NotSeparable { n: usize, q: u64 },
    #[error("length n must be at least 2, got {0}")]
    LengthTooSmall(usize),
    #[error("element is not in the ideal: {0}")]
    NotInIdeal(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: f64, budget: u64 },
    #[error("code is not closed under the constacyclic shift")]
    NotShiftClosed,
    #[error("incompatible chain rings: {0}")]
    IncompatibleRings(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("residue of the ring constant does not match the field constant")]
    ResidueMismatch,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("no full-dimension code found in {tries} samples")]
    ResampleCapExceeded { tries: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
