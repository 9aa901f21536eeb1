use std::process::ExitCode;

use clap::Parser;
use fueter_core::FueterError;

mod commands;
mod config;

use config::{Cli, FileConfig, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(FueterError),
    Acceptance(String),
}

impl From<FueterError> for CliError {
    fn from(e: FueterError) -> Self {
        Self::Numerical(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Acceptance(_) => 1,
            Self::Config(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config(msg) => write!(f, "configuration error: {msg}"),
            Self::Numerical(e) => write!(f, "numerical failure: {e}"),
            Self::Acceptance(msg) => write!(f, "acceptance failure: {msg}"),
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("FUETER_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("FUETER_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let cfg = RunConfig::resolve(&cli.command, file)?;
        commands::run(&cfg)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fueter: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
