use std::io;
use std::path::{Path, PathBuf};

use maxcut_core::{AnnealError, OracleError, ScheduleError};
use thiserror::Error;

use crate::format::ParseError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("known-best table, line {line}: {message}")]
    KnownBest { line: u64, message: String },
    #[error("benchmark csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("{instance}: {source}")]
    Anneal { instance: String, source: AnnealError },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    /// The reported objective disagrees with an independent evaluation of the assignment.
    #[error("{instance}: solver reported {reported} but the assignment evaluates to {actual}")]
    Verification { instance: String, reported: i64, actual: i64 },
    #[error("{0}: no parsable instances")]
    EmptySuite(PathBuf),
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("fetch: {0}")]
    Fetch(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl HarnessError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        Self::Io { path: path.to_owned(), source }
    }

    /// Process exit status: 1 usage or parse error, 2 verification failure, 3 fetch or checksum failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Verification { .. } => 2,
            Self::Manifest { .. } | Self::Fetch(_) => 3,
            _ => 1,
        }
    }
}
