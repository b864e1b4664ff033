use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}: missing mandatory column `{column}`")]
    MissingColumn { path: PathBuf, column: String },

    #[error("{path}:{line}: expected {expected} fields, found {found}")]
    FieldCount {
        path: PathBuf,
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("unknown message type `{0}` (expected Stmt, AskYN, AskWH or Req)")]
    UnknownMessageType(String),

    #[error("field contains a tab or newline and cannot be written as TSV: {0:?}")]
    UnwritableField(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("sample {index}: {message}")]
    Sample { index: usize, message: String },

    #[error("ambiguous contact: both `{first}` and `{second}` occur in the message")]
    AmbiguousContact { first: String, second: String },

    #[error("no prepend rule for {message_type} ({form})")]
    NoPrependRule { message_type: String, form: String },

    #[error("inconsistent clause analysis: {0}")]
    InconsistentAnalysis(String),

    #[error("sentence has no in-vocabulary tokens: {0:?}")]
    NoCoverage(String),

    #[error("line count mismatch: {hypotheses} hypotheses but {references} references")]
    LineCountMismatch { hypotheses: usize, references: usize },

    #[error("model format: {0}")]
    Model(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
