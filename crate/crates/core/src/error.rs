use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, LingoError>;

#[derive(Debug, Error)]
pub enum LingoError {
    #[error("empty corpus")]
    EmptyCorpus,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}{}: invalid UTF-8", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Decode { path: PathBuf, line: Option<usize> },

    #[error("{path}{}: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Parse {
        path: PathBuf,
        line: Option<usize>,
        message: String,
    },

    #[error("{field} must be in {range}")]
    InvalidConfig {
        field: &'static str,
        range: &'static str,
    },

    #[error("unknown strategy '{0}' (expected one of vsm, lsi, lsi-bm25)")]
    UnknownStrategy(String),

    #[error("no clusterable terms")]
    NoClusterableTerms,

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("rank {k} out of range 1..={max}")]
    RankOutOfRange { k: usize, max: usize },

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl LingoError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LingoError::Io {
            path: path.into(),
            source,
        }
    }
}
