use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} must be a positive integer")]
    NotPositive(&'static str),

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("expected p < q, got p = {p}, q = {q}")]
    NotProperFraction { p: u64, q: u64 },

    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },

    #[error("divisor degree {tau} exceeds dividend degree {degree}")]
    DivisorTooLarge { tau: u64, degree: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True for errors caused by exceeding the integer width rather than by bad input.
    pub fn is_overflow(&self) -> bool {
        matches!(self, Error::Overflow(_))
    }
}
