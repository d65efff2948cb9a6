use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("classes live on different lattices: (n={n1}, r={r1}) vs (n={n2}, r={r2})")]
    ShapeMismatch { n1: usize, r1: usize, n2: usize, r2: usize },

    #[error("need at least two P^1 factors, got {0}")]
    TooFewFactors(usize),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("at most {max} points allowed here, got {got}")]
    TooManyPoints { max: usize, got: usize },

    #[error("not a root: self-intersection is {0}, expected -2")]
    NotARoot(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("degrees must be non-negative, got {0:?}")]
    NegativeDegree(Vec<i64>),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid fiber coordinates {coords:?} for n = {n}: {reason}")]
    InvalidFiber { coords: Vec<usize>, n: usize, reason: &'static str },

    #[error("the linear system is empty")]
    EmptySystem,

    #[error("invalid prime {prime}: {reason}")]
    InvalidPrime { prime: u64, reason: String },

    #[error("invalid interpolation points: {0}")]
    InvalidPoints(String),

    #[error("class is not in standard form: {0}")]
    NotStandard(String),

    #[error("expected n = {expected}, got n = {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}
