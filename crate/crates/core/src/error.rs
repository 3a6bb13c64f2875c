use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("empty vector: at least one coordinate is required")]
    EmptyVector,

    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("objective `{objective}` returned non-finite value {value} at {point:?}")]
    NonFinite {
        objective: String,
        value: f64,
        point: Vec<f64>,
    },

    #[error("non-finite input: {0}")]
    Numeric(String),

    #[error("trace ordering: iteration {next} does not follow {last}")]
    TraceOrder { last: usize, next: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("unknown function `{name}`; registered: {}", .registered.join(", "))]
    UnknownFunction {
        name: String,
        registered: Vec<String>,
    },

    #[error("function `{name}` does not support {dims} dimensions (supported: {min}..={max})")]
    UnsupportedDims {
        name: String,
        dims: usize,
        min: usize,
        max: usize,
    },

    #[error("out of range: {0}")]
    Range(String),

    #[error("incompatible reports: {0}")]
    Incompatible(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
