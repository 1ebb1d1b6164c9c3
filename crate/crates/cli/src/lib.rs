//! Library side of the `coqdyn` command-line tool.
//!
//! Every subcommand is a plain function writing to caller-supplied streams,
//! so the binary is a thin argument-parsing shell and tests can drive the
//! commands directly.

pub mod commands;
pub mod config;
pub mod figures;
pub mod output;

use thiserror::Error;

pub use commands::{cmd_classify, cmd_compare, cmd_evolve, cmd_verify, Status, Tolerances};
pub use config::{FileConfig, Initial, OutputFormat, RunConfig};
pub use figures::cmd_figures;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NULL_GENERATOR: u8 = 3;
pub const EXIT_NULL_STATE: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] coqdyn::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(coqdyn::Error::NullGenerator { .. }) => EXIT_NULL_GENERATOR,
            CliError::Core(coqdyn::Error::NullState { .. }) => EXIT_NULL_STATE,
            _ => EXIT_USAGE,
        }
    }
}
