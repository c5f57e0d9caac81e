use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        source: Box<BenchError>,
    },
    #[error("trace csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Solver(#[from] rsane::Error),
    #[error("invalid experiment: {0}")]
    Spec(String),
}

impl BenchError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        BenchError::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
