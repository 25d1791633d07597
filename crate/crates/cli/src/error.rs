use std::fmt;

/// Failure of a subcommand, carrying the process exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, inconsistent configuration or unreadable input (exit 1).
    Usage(String),
    /// A numerical target was not met (exit 2).
    Convergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Convergence(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Convergence(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<geoball::Error> for CliError {
    fn from(err: geoball::Error) -> Self {
        match err {
            geoball::Error::Oracle(_) => CliError::Convergence(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
