use std::path::PathBuf;

/// Harness failures, split by the exit code they map to.
#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    /// Bad configuration, detected before any run starts.
    #[error("config error: {0}")]
    Config(String),
    /// A run, a results file or a report failed.
    #[error("{0}")]
    Runtime(#[from] arrde::Error),
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| BenchError::Io { path, source }
    }
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
