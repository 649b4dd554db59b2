use std::process::ExitCode;

use isolyap_core::{EnsembleError, ExactError, McError, MhgError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or invalid spec.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("could not write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{failed} of {total} checks failed")]
    GateFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::GateFailed { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Output(_) => 3,
        })
    }
}

impl From<EnsembleError> for CliError {
    fn from(e: EnsembleError) -> Self {
        CliError::Config(e.to_string())
    }
}

macro_rules! compute_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        })*
    };
}

compute_error!(ExactError, McError, MhgError, isolyap_core::Error);

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(std::io::Error::other(e))
    }
}
