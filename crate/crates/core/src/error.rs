use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the search and mining pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("feature combination set has {size} members, above the enumeration cap of {cap}; use a sampled workflow")]
    Capacity { size: u64, cap: u64 },

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV {path} (line {line}): {message}")]
    Csv {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn state(msg: impl Into<String>) -> Self {
        Error::InvalidState(msg.into())
    }

    /// True for failures caused by the input data rather than the configuration.
    pub fn is_data_error(&self) -> bool {
        matches!(self, Error::Io { .. } | Error::Csv { .. } | Error::Schema(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
