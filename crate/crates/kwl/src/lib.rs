//! Command-line laboratory for `kwl-core`: config parsing, deterministic
//! CSV/JSON output, parameter scans and the `kwl` subcommands.

pub mod cli;
pub mod config;
pub mod output;
pub mod scan;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for invalid input, 3 for numerical or IO failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            _ => 3,
        }
    }
}

impl From<kwl_core::Error> for CliError {
    fn from(e: kwl_core::Error) -> Self {
        match e {
            kwl_core::Error::Numerical(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
