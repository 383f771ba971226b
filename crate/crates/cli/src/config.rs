//! Effective run configuration: defaults, then `SDL_PRECISION`, then the
//! `--config` file, then explicit flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::CliError;

pub const DEFAULT_PRECISION: u32 = 50;
pub const DEFAULT_DEPTH: usize = 40;
pub const DEFAULT_CAP: u32 = 5;
pub const DEFAULT_SAMPLES: usize = 200;
pub const PRECISION_ENV: &str = "SDL_PRECISION";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (expected json or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Significant digits of rendered decimals.
    pub precision: u32,
    /// Convergent search depth.
    pub depth: usize,
    /// Truncation cap for a bare `liouville10` slope literal.
    pub cap: u32,
    pub samples: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: DEFAULT_PRECISION,
            depth: DEFAULT_DEPTH,
            cap: DEFAULT_CAP,
            samples: DEFAULT_SAMPLES,
            format: Format::Json,
        }
    }
}

/// Flag values that override the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision: Option<u32>,
    pub depth: Option<usize>,
    pub cap: Option<u32>,
    pub samples: Option<usize>,
    pub format: Option<Format>,
}

fn positive<T: FromStr + PartialOrd + Default>(key: &str, raw: &str) -> Result<T, CliError> {
    match raw.trim().parse::<T>() {
        Ok(v) if v > T::default() => Ok(v),
        _ => Err(CliError::Usage(format!("{key}: expected a positive integer, got {raw:?}"))),
    }
}

impl RunConfig {
    pub fn resolve(env_precision: Option<&str>, file: Option<&Path>, flags: &Overrides) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(raw) = env_precision {
            cfg.precision = positive(PRECISION_ENV, raw)?;
        }
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, &e))?;
            cfg.apply_file(&text)?;
        }
        if let Some(v) = flags.precision {
            cfg.precision = v;
        }
        if let Some(v) = flags.depth {
            cfg.depth = v;
        }
        if let Some(v) = flags.cap {
            cfg.cap = v;
        }
        if let Some(v) = flags.samples {
            cfg.samples = v;
        }
        if let Some(v) = flags.format {
            cfg.format = v;
        }
        if cfg.precision == 0 || cfg.depth == 0 || cfg.cap == 0 || cfg.samples == 0 {
            return Err(CliError::Usage("--precision, --depth, --cap and --samples must be positive".into()));
        }
        Ok(cfg)
    }

    /// `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--config line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "precision" => self.precision = positive(key, value)?,
                "depth" => self.depth = positive(key, value)?,
                "cap" => self.cap = positive(key, value)?,
                "samples" => self.samples = positive(key, value)?,
                "format" => self.format = value.parse().map_err(|e| CliError::Usage(format!("format: {e}")))?,
                _ => return Err(CliError::Usage(format!("--config line {}: unknown key {key:?}", i + 1))),
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "precision": self.precision,
            "depth": self.depth,
            "cap": self.cap,
            "samples": self.samples,
            "format": self.format.to_string(),
        })
    }
}
