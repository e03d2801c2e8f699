use std::path::PathBuf;

use oscsolve_core::Error as CoreError;

/// Errors surfaced by the file formats and the CLI.
#[derive(Debug, thiserror::Error)]
pub enum ShellError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCount { declared: usize, found: usize },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
}

impl ShellError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ShellError::Io { path: path.into(), source }
    }

    /// Process exit code: 2 for invalid input, 3 for oracle budget refusals, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            ShellError::Core(CoreError::OverBudget { .. }) => 3,
            ShellError::Io { .. } | ShellError::Json { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = ShellError> = std::result::Result<T, E>;
