//! Configuration, catalog, report emission and the acceptance suite of the
//! `modinv` command-line tool.

pub mod catalog;
pub mod config;
pub mod report;
pub mod run;
pub mod verify;

pub use config::{parse_config, render_config, Command, RunConfig};
pub use run::{limits_from_env, run, Pipeline};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("unknown example {name:?}; known examples: {known}")]
    UnknownExample { name: String, known: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Engine(#[from] modinv::Error),
}

impl CliError {
    /// 2 for exhausted resource caps, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.is_resource_limit() => 2,
            _ => 1,
        }
    }
}
