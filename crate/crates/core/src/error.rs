use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic 2 is not supported for quadratic forms")]
    CharacteristicTwo,
    #[error("not a quadratic form in the given variables: {0}")]
    NotQuadratic(String),
    #[error("all forms vanish identically: infinite intersection")]
    InfiniteIntersection,
    #[error("ideal is the whole ring: empty variety")]
    EmptyVariety,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid prime {0}")]
    InvalidPrime(u64),
    #[error("q = 2 is not allowed for rank-dependent predicates")]
    RankNeedsOddPrime,
    #[error("interpolation underdetermined: {samples} samples for degree {degree}")]
    Underdetermined { samples: usize, degree: usize },
    #[error("interpolation produced non-integer coefficients: {0}")]
    NonIntegerInterpolation(String),
    #[error("samples are not fitted by a polynomial of degree {0}")]
    NotPolynomialCount(usize),
    #[error("anomaly: {0}")]
    Anomaly(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
