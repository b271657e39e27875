//! Error type shared across the pipeline stages.

use std::fmt;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// Reading or writing a file failed.
    Io { path: PathBuf, source: std::io::Error },
    /// A JSONL intermediate contained a malformed record.
    Json { path: PathBuf, line: usize, source: serde_json::Error },
    /// A CSV file could not be read or written.
    Csv { path: PathBuf, message: String },
    /// Bad command line arguments or config file contents.
    Config(String),
    /// The tag sidecar file is malformed.
    Sidecar(String),
    /// A sidecar block names a comment id that is not in the corpus.
    UnknownCommentId(u64),
    /// A sidecar block has a different token count than the comment it targets.
    TokenCountMismatch { comment_id: u64, expected: usize, got: usize },
    /// Predicted terms that the oracle does not label.
    MissingOracleLabels(Vec<String>),
    /// The rule engine was handed an empty tag sequence.
    EmptyPosSequence,
    /// A stage failed; wraps the underlying error with the stage name.
    Stage { stage: &'static str, source: Box<Error> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Io { path, source } => write!(f, "{}: {}", path.display(), source),
            Error::Json { path, line, source } => {
                write!(f, "{}:{}: invalid record: {}", path.display(), line, source)
            }
            Error::Csv { path, message } => write!(f, "{}: {}", path.display(), message),
            Error::Config(msg) => write!(f, "{}", msg),
            Error::Sidecar(msg) => write!(f, "sidecar: {}", msg),
            Error::UnknownCommentId(id) => {
                write!(f, "sidecar references unknown comment id {}", id)
            }
            Error::TokenCountMismatch { comment_id, expected, got } => write!(
                f,
                "sidecar block for comment {} has {} tags but the comment has {} tokens",
                comment_id, got, expected
            ),
            Error::MissingOracleLabels(terms) => {
                write!(f, "oracle is missing labels for: {}", terms.join(", "))
            }
            Error::EmptyPosSequence => write!(f, "cannot classify an empty tag sequence"),
            Error::Stage { stage, source } => write!(f, "stage {} failed: {}", stage, source),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            Error::Json { source, .. } => Some(source),
            Error::Stage { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// True when the error is a usage problem rather than a processing failure.
    /// The CLI exits 1 for the former and 2 for the latter.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Config(_) => true,
            Error::Stage { source, .. } => source.is_usage(),
            _ => false,
        }
    }

    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }
}
