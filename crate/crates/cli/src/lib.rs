//! `sdl`: command-line front end for the small-divisor laboratory.
//!
//! Every invocation prints one report (JSON by default, CSV where a command
//! has a tabular form). Exit status 0 on success, 1 on domain errors with a
//! structured `{"error": {"name", "data"}}` body, 2 on usage errors.

mod args;
mod commands;
pub mod config;
pub mod emit;

use std::fmt;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::Cli;
use config::{RunConfig, PRECISION_ENV};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(sdl_core::Error),
    Io { path: String, message: String },
}

impl CliError {
    pub fn io(path: &Path, e: &std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// Structured body for exit status 1.
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Domain(e) => json!({ "error": { "name": e.name(), "data": e.data() } }),
            CliError::Io { path, message } => {
                json!({ "error": { "name": "IoError", "data": { "path": path, "message": message } } })
            }
            CliError::Usage(msg) => json!({ "error": { "name": "UsageError", "data": { "message": msg } } }),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Domain(e) => write!(f, "{}: {e}", e.name()),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl From<sdl_core::Error> for CliError {
    fn from(e: sdl_core::Error) -> Self {
        CliError::Domain(e)
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `argv` (program name first) with `SDL_PRECISION` read from the
/// process environment.
pub fn run(argv: &[String]) -> Outcome {
    let env = std::env::var(PRECISION_ENV).ok();
    run_with_env(argv, env.as_deref())
}

pub fn run_with_env(argv: &[String], env_precision: Option<&str>) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if status == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { status, stdout, stderr };
        }
    };
    match execute(&cli, env_precision) {
        Ok(stdout) => Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e @ CliError::Usage(_)) => Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
        Err(e) => Outcome {
            status: e.status(),
            stdout: emit::json_text(&e.to_json()),
            stderr: format!("{e}\n"),
        },
    }
}

fn execute(cli: &Cli, env_precision: Option<&str>) -> Result<String, CliError> {
    let cfg = RunConfig::resolve(env_precision, cli.global.config.as_deref(), &cli.global.overrides())?;
    let start = Instant::now();
    let report = commands::dispatch(&cli.command, &cfg)?;
    let elapsed = cli.global.timing.then(|| start.elapsed());
    let text = report.render(&cfg, elapsed)?;
    let Some(path) = &cli.global.out else {
        return Ok(text);
    };
    // commands with an artifact (family spec, primitive series) write it to
    // --out and keep the report on stdout; the rest redirect the report
    match &report.artifact {
        Some(artifact) => {
            std::fs::write(path, emit::json_text(artifact)).map_err(|e| CliError::io(path, &e))?;
            Ok(text)
        }
        None => {
            std::fs::write(path, &text).map_err(|e| CliError::io(path, &e))?;
            Ok(String::new())
        }
    }
}
