use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },
    #[error(transparent)]
    Core(#[from] lgryd::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 0 success, 1 runtime failure, 2 configuration error, 3 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Verification(_) => 3,
            _ => 1,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
