use std::path::PathBuf;

use meanbound_core::{BoundError, MatrixError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}line {line}: {msg}")]
    Parse {
        context: String,
        line: usize,
        msg: String,
    },
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("sampling region is empty: {0}")]
    EmptyRegion(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
