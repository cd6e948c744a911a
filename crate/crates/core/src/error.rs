use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-summable tail (step {step} must be negative)")]
    NonSummableTail { step: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("log of non-unital series")]
    NonUnitalLog,
    #[error("series is not invertible (zero constant term)")]
    NotInvertible,
    #[error("insufficient expansion order")]
    InsufficientOrder,
    #[error("variable mismatch between series: {0}")]
    VariableMismatch(String),
    #[error("negative coefficient {coeff} at q^{k}: internal consistency failure")]
    NegativeCk { k: i64, coeff: i64 },
    #[error("odd power u^{power} with nonzero coefficient in class {class}")]
    OddPower { power: i64, class: String },
    #[error("not an interior 2-cone: {0:?}")]
    NotInterior([usize; 2]),
    #[error("flop undefined: edge {edge:?} has normal bundle degrees ({a}, {b})")]
    FlopUndefined { edge: [usize; 2], a: i64, b: i64 },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid surface fan: {0}")]
    InvalidSurface(String),
    #[error("unknown edge name {name:?}; valid names: {valid:?}")]
    UnknownEdge { name: String, valid: Vec<String> },
    #[error("{0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
