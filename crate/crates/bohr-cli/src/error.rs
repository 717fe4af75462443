use std::io;

/// Process exit codes.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERIFICATION_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid --{field}: {message}")]
    Usage {
        field: &'static str,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] bohr_core::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] io::Error),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(bohr_core::Error::NotConverged { .. }) => EXIT_NOT_CONVERGED,
            _ => EXIT_USAGE,
        }
    }
}
