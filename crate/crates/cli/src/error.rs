use std::io;
use std::path::PathBuf;

use herdscope_core::{ConfigError, CorpusError};
use thiserror::Error;

/// Process exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{stage}: {source}")]
    Corpus {
        stage: &'static str,
        #[source]
        source: CorpusError,
    },
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Corpus {
                source: CorpusError::TooManyInvalid { .. },
                ..
            } => EXIT_DATA,
            _ => EXIT_IO,
        }
    }
}
