use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("truncation {n} is too small (need at least {min})")]
    TruncationTooSmall { n: usize, min: usize },

    #[error("generator produced a non-finite log-quotient at index {index}")]
    NonFinite { index: usize },

    #[error("table has {available} quotients but {requested} were requested")]
    TableTooShort { available: usize, requested: usize },

    #[error("log t = {log_t} is beyond the last materialized quotient (max evaluable log t = {max_log_t})")]
    OutOfRange { log_t: f64, max_log_t: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation mismatch: {a} vs {b}")]
    TruncationMismatch { a: usize, b: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("bad spec '{spec}': {msg}")]
    SpecParse { spec: String, msg: String },

    #[error("table line {line}: {msg}")]
    TableParse { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
