//! Error type shared by every estimator in the crate.

use thiserror::Error;

/// Failure modes of the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// The input is too short for the requested operation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A parameter or value is outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The signal carries no usable variation (constant input, zero
    /// denominators in the recursions).
    #[error("degenerate signal: {0}")]
    DegenerateSignal(String),

    /// A numeric procedure failed to produce a finite result.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// No interior spectral maximum exists (flat or monotone spectrum).
    #[error("no spectral peak: {0}")]
    NoPeak(String),

    /// An error raised inside a named pipeline stage.
    #[error("stage '{stage}': {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips pipeline stage wrappers, yielding the originating error.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// Wraps `self` with the pipeline stage it was raised in.
    pub(crate) fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
