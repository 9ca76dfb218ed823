use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed document: {0}")]
    Parse(String),

    #[error("invalid unit `{name}`: {reason}")]
    InvalidUnit { name: String, reason: String },

    #[error("duplicate unit name `{0}`")]
    DuplicateUnit(String),

    #[error("unknown unit `{0}`")]
    UnknownUnit(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("unknown model `{0}` (expected one of apx1, apx2, apx3, apx4)")]
    UnknownModel(String),

    #[error("unknown matchup round {round} {pairing}")]
    UnknownMatchup { round: u8, pairing: String },

    #[error("reference data: {0}")]
    Reference(String),

    #[error("exact enumeration limit exceeded: {0}")]
    Explosion(String),
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
