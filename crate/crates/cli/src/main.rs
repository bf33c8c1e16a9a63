//! `overlap-lab`: classify, search, cross-verify and count exact overlaps of
//! the projected four-corner Cantor set.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use crate::args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Disagreement(String),
    #[error("{0}")]
    Overflow(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Disagreement(_) => 2,
            CliError::Overflow(_) => 3,
        }
    }
}

impl From<overlap_lab::Error> for CliError {
    fn from(e: overlap_lab::Error) -> Self {
        if e.is_overflow() {
            CliError::Overflow(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("overlap-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
