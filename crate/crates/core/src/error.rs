use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("entropy is undefined for an empty list of counts")]
    EmptyEntropy,

    #[error("entropy counts must all be positive (count {index} is zero)")]
    ZeroCount { index: usize },

    #[error("rank {rank} is outside [1..{n}]")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("index {index} is outside [0..{len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),

    #[error("invalid query spec: {0}")]
    InvalidQuerySpec(String),

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("malformed serialized structure: {0}")]
    Format(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{algorithm} disagrees with the oracle: {detail}")]
    Mismatch { algorithm: String, detail: String },

    #[error(transparent)]
    Stream(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
