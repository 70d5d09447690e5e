use std::path::PathBuf;

use thiserror::Error;

/// Everything that stops a run before a verdict, mapped onto exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{message}\nhint: add an entry for {key} to {hint}")]
    CatalogGap {
        key: String,
        message: String,
        hint: String,
    },
    #[error(transparent)]
    Algebra(#[from] brieskorn_core::AlgebraError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CatalogGap { .. } => crate::EXIT_CATALOG_GAP,
            _ => crate::EXIT_INPUT,
        }
    }
}
