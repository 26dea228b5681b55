//! Command-line front end for `jlcalc`.

mod commands;
pub mod parse;
pub mod render;

pub use commands::{run, Cli, Command, Output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl From<jlcalc::Error> for CliError {
    fn from(e: jlcalc::Error) -> Self {
        match e {
            jlcalc::Error::Malformed(_) | jlcalc::Error::UnknownLine(_) => CliError::Parse(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}
