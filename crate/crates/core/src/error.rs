use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used for exit codes and report statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("cycle notation error at position {position}: {message}")]
    Cycles { position: usize, message: String },

    #[error("line {line}: {message}")]
    Line { line: usize, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("group order exceeds the configured bound of {bound}")]
    OrderBound { bound: usize },

    #[error("subgroup count exceeds the configured bound of {bound}")]
    SubgroupBound { bound: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("{group}: {source}")]
    Group {
        group: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::OrderBound { .. } | Error::SubgroupBound { .. } => ErrorKind::Resource,
            Error::Internal(_) => ErrorKind::Internal,
            Error::File { source, .. } | Error::Group { source, .. } => source.kind(),
            _ => ErrorKind::Input,
        }
    }

    pub fn in_group(self, group: impl Into<String>) -> Self {
        Error::Group {
            group: group.into(),
            source: Box::new(self),
        }
    }

    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
