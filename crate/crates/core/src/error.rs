use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while building games or ingesting data files.
#[derive(Debug, Error)]
pub enum BlottoError {
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("invalid engine config: {0}")]
    InvalidConfig(String),

    #[error("voter count must be even and at least 2, got {0}")]
    VoterCount(u32),

    #[error("instance too large to enumerate: {count} compositions (limit {limit})")]
    TooLarge { count: u128, limit: u128 },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
}

pub type Result<T> = std::result::Result<T, BlottoError>;
