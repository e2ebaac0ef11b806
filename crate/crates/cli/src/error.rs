use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read config file {}: {message}", path.display())]
    ConfigRead { path: PathBuf, message: String },
    #[error("{}:{line}: {message}", path.display())]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl CliError {
    /// Process exit status for this error. Help and version requests come
    /// through as clap errors with status 0.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            _ => 2,
        }
    }
}
