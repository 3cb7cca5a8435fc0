use std::fmt::Display;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or input; exit status 2.
    Usage(String),
    Io(io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Turn any library error into a usage error.
pub fn usage<E: Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Print `value` as JSON or `text` as is.
pub fn emit<T: Serialize>(format: Format, value: &T, text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::Io(e.into()))?;
            writeln!(out)?;
        }
        Format::Text => {
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
