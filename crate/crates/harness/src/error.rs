use std::path::PathBuf;

use ssn_core::GroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: GroupError },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("bad family descriptor: {0}")]
    Family(String),
    #[error("bad corpus: {0}")]
    Corpus(String),
    #[error("cannot replay: {0}")]
    Replay(String),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}
