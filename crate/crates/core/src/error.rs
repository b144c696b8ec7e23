use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("alphabet mismatch: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),
    #[error("assignment has no image for generator `{0}`")]
    MissingAssignment(String),
    #[error("no weight for generator `{0}`")]
    MissingWeight(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree span of the zero polynomial is undefined")]
    ZeroSpan,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division, remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("negative index {0}")]
    NegativeIndex(i64),
    #[error("invalid knot spec: {0}")]
    InvalidSpec(String),
    #[error("{0} is not an L-space knot")]
    NotLSpace(String),
    #[error("invalid slope {0}/{1}: need s > 0 and gcd(r, s) = 1")]
    InvalidSlope(i64, i64),
    #[error("slope {slope} is below the L-space threshold {threshold}")]
    SlopeBelowThreshold { slope: String, threshold: i64 },
    #[error("{0} is outside the closed-form longitude families")]
    NoClosedForm(String),
    #[error("({0}, {1}) are not coprime")]
    NonCoprime(i64, i64),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("quotient degree {0} exceeds the cap {1}")]
    CapExceeded(usize, usize),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("unresolved equality certificate `{0}`")]
    UnresolvedCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
