use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("leading coefficient {magnitude:e} of the divisor is below the division floor")]
    DivisionByNearZeroConstant { magnitude: f64 },

    #[error("logarithm needs constant term 1, found {re} + {im}i")]
    NotUnitConstantTerm { re: f64, im: f64 },

    #[error("exponential needs constant term 0, found {re} + {im}i")]
    NonzeroConstantTerm { re: f64, im: f64 },

    #[error("series is not normalized: expected c0 = 0 and c1 = 1")]
    NotNormalized,

    #[error("series of order {order} is too short for index {needed}")]
    OrderTooLow { order: usize, needed: usize },

    #[error("invalid indices n = {n}, m = {m:?}")]
    InvalidIndices { n: usize, m: Option<usize> },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid class spec: {0}")]
    InvalidSpec(String),

    #[error("unknown named function `{0}`")]
    UnknownName(String),

    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("function vanishes at grid point {re} + {im}i")]
    ZeroOnGrid { re: f64, im: f64 },

    #[error("derivative vanishes at grid point {re} + {im}i")]
    CriticalPointOnGrid { re: f64, im: f64 },

    #[error("cos(gamma) = {0:e} is degenerate")]
    DegenerateCosGamma(f64),

    #[error("invalid search problem: {0}")]
    InvalidProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
