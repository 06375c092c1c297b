use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] infolr::Error),
}

impl CliError {
    /// Process exit code: every error here is a usage or configuration
    /// problem; failed checks are reported through the run report instead.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
