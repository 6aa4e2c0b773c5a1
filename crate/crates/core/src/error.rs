use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("{q} is not a prime power")]
    NotPrimePower { q: u64 },

    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u64 },

    #[error("no orthogonal Latin squares of order {d}: {reason}")]
    NoOrthogonalMate { d: usize, reason: String },

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("matrix does not encode an orthogonal Latin pair: {0}")]
    NotAnOls(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("unsupported: {0}")]
    Capability(String),

    #[error("invalid bipartition: {0}")]
    Split(String),

    #[error("not normalized: {0}")]
    Normalization(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
