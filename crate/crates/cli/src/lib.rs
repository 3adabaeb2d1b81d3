//! The `wordlab` command line.
//!
//! [`run`] parses arguments, dispatches to the library and writes the
//! emission to the given streams. Exit codes: 0 on success, 1 on a domain or
//! capacity error, 2 on a usage error, 3 when `verify` finds a violation.

mod args;
mod commands;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::Value;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Version of the JSON envelope layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub(crate) struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    pub(crate) fn usage(message: impl Display) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    pub(crate) fn domain(message: impl Display) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: message.to_string(),
        }
    }
}

impl From<wordlab::Error> for CliError {
    fn from(e: wordlab::Error) -> Self {
        CliError::domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::domain(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::domain(e)
    }
}

pub(crate) type CliResult<T = i32> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Format {
    Text,
    Json,
    Csv,
    Plot,
}

#[derive(Serialize)]
pub(crate) struct Envelope<'a, R> {
    pub schema_version: u32,
    pub command: &'a str,
    pub params: Value,
    pub result: R,
}

pub(crate) fn envelope_json<R: Serialize>(
    command: &str,
    params: Value,
    result: R,
) -> CliResult<String> {
    Ok(serde_json::to_string(&Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        params,
        result,
    })?)
}

/// Runs the command line given by `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let stream: &mut dyn Write = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => out,
                _ => err,
            };
            let _ = write!(stream, "{}", e.render());
            return e.exit_code();
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else if cli.plot_csv {
        Format::Plot
    } else {
        Format::Text
    };
    match commands::dispatch(cli.command, format, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "wordlab: {}", e.message);
            e.code
        }
    }
}
