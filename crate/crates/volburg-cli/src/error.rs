//! CLI error type and the exit-code mapping.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Core(#[from] volburg::Error),

    #[error("{path}: {source}")]
    InFile {
        path: String,
        #[source]
        source: Box<CliError>,
    },
}

impl CliError {
    /// Attaches the originating file, for multi-asset commands.
    pub fn in_file(self, path: &std::path::Path) -> CliError {
        match self {
            // I/O errors already carry their path.
            CliError::Io(m) => CliError::Io(m),
            other => CliError::InFile {
                path: path.display().to_string(),
                source: Box::new(other),
            },
        }
    }

    /// Exit codes: 1 for invalid input or schema problems, 2 for numerical
    /// failures, 3 for I/O errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Schema(_) => 1,
            CliError::Core(e) => match e.root() {
                volburg::Error::InvalidInput(_) | volburg::Error::InsufficientData(_) => 1,
                volburg::Error::DegenerateSignal(_)
                | volburg::Error::NumericalFailure(_)
                | volburg::Error::NoPeak(_) => 2,
                volburg::Error::Stage { .. } => 2,
            },
            CliError::InFile { source, .. } => source.exit_code(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
