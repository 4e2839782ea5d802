use std::io;

use crate::coloring::ConflictReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("partitioning covers {partition} vertices but the graph has {graph}")]
    PartitionMismatch { graph: usize, partition: usize },

    #[error("vertex {0} has no color")]
    Incomplete(usize),

    #[error("{algorithm} with {threads} threads produced {} conflicting edges", .conflicts.len())]
    VerificationFailed {
        algorithm: String,
        threads: usize,
        conflicts: ConflictReport,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}
