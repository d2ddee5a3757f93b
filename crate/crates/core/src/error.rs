use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{label}: invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { label: String, offset: usize },

    #[error("edge list line {line}: {kind}")]
    EdgeList { line: usize, kind: EdgeListError },

    #[error("operation requires a non-empty network")]
    EmptyNetwork,

    #[error("invalid pipeline configuration: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

/// Reasons an edge-list record is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("expected 3 tab-separated fields, found {0}")]
    FieldCount(usize),
    #[error("empty word")]
    EmptyWord,
    #[error("weight {0:?} is not a positive integer")]
    BadWeight(String),
    #[error("duplicate edge {0} -> {1}")]
    Duplicate(String, String),
    #[error("self-loop on {0}")]
    SelfLoop(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
