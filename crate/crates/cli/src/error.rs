use std::process::ExitCode;

/// Command failures, each tied to a process exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or inconsistent configuration or flags (exit 2).
    #[error("configuration error: {0}")]
    Config(String),
    /// A tractability guard refused the computation (exit 3).
    #[error("refused: {0}")]
    Guard(String),
    /// Anything else, e.g. an unwritable output path (exit 1).
    #[error("error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Config(_) => 2,
            Self::Guard(_) => 3,
            Self::Internal(_) => 1,
        })
    }
}

impl From<crclist::Error> for CliError {
    fn from(e: crclist::Error) -> Self {
        match e {
            crclist::Error::TractabilityGuard { .. } => Self::Guard(e.to_string()),
            other => Self::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Internal(e.to_string())
    }
}
