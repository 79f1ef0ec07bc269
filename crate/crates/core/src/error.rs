use std::path::PathBuf;

/// Errors produced while loading data or running a clustering.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        path: PathBuf,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{0}: no data rows")]
    EmptyInput(PathBuf),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cluster index {index} out of range for k = {k}")]
    Bounds { index: usize, k: usize },
    #[error("inconsistent inputs: {0}")]
    Consistency(String),
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
