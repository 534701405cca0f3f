use std::io;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, #[source] io::Error),

    #[error("seed file: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] rbf_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{0} verification check(s) failed")]
    VerificationFailed(usize),
}

impl CliError {
    /// 0 success, 1 usage or I/O, 2 mathematical inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(rbf_core::Error::InconsistencyDetected { .. })
            | CliError::Core(rbf_core::Error::InconsistentSeed { .. })
            | CliError::VerificationFailed(_) => 2,
            _ => 1,
        }
    }
}
