use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate length mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid ring document: {0}")]
    InvalidRing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polarization is not ample: {0}")]
    NotAmple(String),

    #[error("divisor is not nef")]
    NotNef,

    #[error("beta-bar is not defined: discriminant is negative ({0})")]
    NegativeDiscriminant(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("quantity undefined: {0}")]
    Undefined(String),

    #[error("threefold carries no Todd data")]
    MissingTodd,

    #[error("linear system is singular")]
    SingularSystem,

    #[error("incompatible quadratic fields Q(sqrt {0}) and Q(sqrt {1})")]
    IncompatibleFields(String, String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse { column, message: message.into() }
    }
}
