use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot specialize at q = 1: denominator {0} vanishes there")]
    PoleAtOne(String),

    #[error("series division by a series with zero constant term")]
    NonInvertibleSeries,

    #[error("{op} requires constant term {expected}, found {found}")]
    ConstantTerm { op: &'static str, expected: &'static str, found: String },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("unknown Cartan type `{0}`")]
    UnknownCartanType(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
