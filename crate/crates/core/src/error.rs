use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid r = {r}: {reason}")]
    InvalidR { r: i64, reason: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("delta is not well defined on residue {key}: {first} vs {second}")]
    WellDefinedness {
        key: u64,
        first: String,
        second: String,
    },

    #[error("telescoping sum over the orbit of {start} is {sum}, expected 0")]
    Inconsistency { start: u64, sum: String },

    #[error("no weight for variable `{0}`")]
    MissingWeight(String),

    #[error("lattice error: {0}")]
    Lattice(String),

    #[error("dimension error: ambient arity {arity} with {equations} equations is not a three-fold")]
    Dimension { arity: usize, equations: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid germ: {0}")]
    Germ(String),
}
