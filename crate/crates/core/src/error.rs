use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("rational function has a pole at infinity")]
    PoleAtInfinity,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("invalid shift parameters: {0}")]
    InvalidAlphas(String),
    #[error("grading context mismatch: {0}")]
    ContextMismatch(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("weight not realized: {0}")]
    WeightNotRealized(String),
    #[error("vector is not maximal: {0}")]
    NotMaximal(String),
    #[error("vector is not a joint eigenvector: {0}")]
    NotEigenvector(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("Drinfeld data inconsistent with weight: {0}")]
    InconsistentDrinfeld(String),
    #[error("invalid cutoff: {0}")]
    InvalidCutoff(String),
    #[error("auxiliary module data do not commute: {0}")]
    NoncommutingAux(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
