use thiserror::Error;

use crate::localsolve::PointClassification;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero operator")]
    ZeroOperator,
    #[error("local solutions are not Puiseux series: {0}")]
    NotPuiseux(Box<PointClassification>),
    #[error("singular point is not rational: {0}")]
    IrrationalPoint(String),
    #[error("series precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
