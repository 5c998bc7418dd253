use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid language code {0:?}: expected two lowercase ASCII letters")]
    InvalidLanguage(String),

    #[error("unsupported language {lang}; supported: {supported}")]
    UnsupportedLanguage { lang: String, supported: String },

    #[error("invalid direction: origin and derived language are both {0}")]
    SameLanguageDirection(String),

    #[error("invalid pair {id:?}: {reason}")]
    InvalidPair { id: String, reason: String },

    #[error("invalid corpus: {0}")]
    InvalidCorpus(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("malformed markup at byte {offset}: {message}")]
    Markup { offset: usize, message: String },

    #[error("length mismatch: {left} vs {right} aligned items")]
    LengthMismatch { left: usize, right: usize },

    #[error("insufficient data: {0}")]
    Insufficient(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing score cell: {0}")]
    MissingCell(String),

    #[error("ragged topic vectors: sample {index} has {found} topics, expected {expected}")]
    RaggedTopics {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("missing file {0}")]
    MissingFile(PathBuf),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
