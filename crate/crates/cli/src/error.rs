use std::path::PathBuf;

use vicsqueeze_core::Error as ModelError;

/// Everything the command line can fail with, mapped onto exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    /// 2 for bad input, 3 for numerical failure, 1 for the filesystem.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(e) => match e {
                ModelError::InvalidParameter { .. }
                | ModelError::InvalidGrid(_)
                | ModelError::OutsideSecularRegime { .. } => 2,
                _ => 3,
            },
            CliError::Io { .. } => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
