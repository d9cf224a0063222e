use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid chroma: {0}")]
    InvalidChroma(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("TIVs were built with different weight vectors")]
    IncompatibleWeights,

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("insufficient input: need at least {needed}, got {got}")]
    InsufficientInput { needed: usize, got: usize },

    #[error("unknown key profile `{0}`")]
    UnknownProfile(String),

    #[error("malformed key profile: {0}")]
    MalformedProfile(String),

    /// A rejected row (CSV line or JSON frame), numbered from 1.
    #[error("{source_name}: row {row}: {message}")]
    Parse {
        source_name: String,
        row: usize,
        message: String,
    },

    #[error("{source_name}: {message}")]
    Format {
        source_name: String,
        message: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("wav: {0}")]
    Wav(#[from] hound::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
