use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use q41_core::GeomError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Geom(#[from] GeomError),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Geom(e) => e.kind(),
            CliError::Config(_) => "ConfigError",
            CliError::Io { .. } => "IoError",
            CliError::Json(_) => "JsonError",
            CliError::Csv(_) => "CsvError",
        }
    }

    /// The document written to stderr.
    pub fn document(&self) -> ErrorDocument {
        ErrorDocument {
            kind: self.kind(),
            message: self.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorDocument {
    pub kind: &'static str,
    pub message: String,
}
