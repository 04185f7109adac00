//! Library side of the `evobandit` command-line tool: config parsing, the
//! `run`, `compare` and `verify` commands, and CSV/JSON output.

pub mod arms;
pub mod commands;
pub mod config;
pub mod manifest;
pub mod output;
pub mod verify;

pub use arms::{parse_arm, Arm};
pub use config::{parse_config, Settings};

/// Failure of a command, carrying the process exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Runtime(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Config(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<evobandit_core::EvoError> for CliError {
    fn from(e: evobandit_core::EvoError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
