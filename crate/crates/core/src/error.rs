use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "factorization failed at pivot {pivot} (value {value:.6e}): matrix is not positive definite; \
         enable jitter repair to retry with (C + eps*I)/(1 + eps), eps in {{1e-10, 1e-8, 1e-6, 1e-4, 1e-2}}"
    )]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("parse error at row {row}, column {column:?}: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("parse error at row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("unknown column {0:?}")]
    UnknownColumn(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate column {0:?}: zero variance")]
    DegenerateColumn(String),

    #[error("degenerate scaling for column {0:?}: min equals max")]
    DegenerateScaling(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}
