use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    /// `pointer` is a JSON pointer to the offending field, or a flag name.
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Core(#[from] qcurve_core::Error),

    #[error("{failed} of {total} validation cases failed")]
    Validation { failed: usize, total: usize },
}

impl CliError {
    pub fn schema(pointer: impl Into<String>, message: impl std::fmt::Display) -> Self {
        CliError::Schema { pointer: pointer.into(), message: message.to_string() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 for schema errors, 3 for stationary states, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } => 2,
            CliError::Degenerate(_) => 3,
            CliError::Core(qcurve_core::Error::StationaryState { .. }) => 3,
            _ => 1,
        }
    }
}

/// Maps a stationary-state core error to [`CliError::Degenerate`].
pub(crate) fn degenerate(e: qcurve_core::Error) -> CliError {
    match e {
        qcurve_core::Error::StationaryState { speed } => {
            CliError::Degenerate(format!("stationary state (speed {speed:e}); curvature and torsion are undefined"))
        }
        other => CliError::Core(other),
    }
}
