//! Report rendering. JSON objects come out with sorted keys (the
//! `serde_json` map is ordered) and two-space indentation; CSV columns are
//! fixed per command.

use std::time::Duration;

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

/// Fixed-column rows for the CSV form of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Table {
            header: header.iter().map(|h| h.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    /// Subcommand path, e.g. `slope gap`.
    pub command: String,
    /// Resolved command arguments, echoed back.
    pub arguments: Value,
    pub payload: Value,
    pub table: Option<Table>,
    /// File written to `--out` instead of the report, if the command has one.
    pub artifact: Option<Value>,
}

impl Report {
    pub fn render(&self, cfg: &RunConfig, elapsed: Option<Duration>) -> Result<String, CliError> {
        match cfg.format {
            Format::Json => {
                let mut body = json!({
                    "command": self.command,
                    "arguments": self.arguments,
                    "config": cfg.to_json(),
                    "payload": self.payload,
                });
                if let Some(d) = elapsed {
                    body["duration_seconds"] = Value::String(format!("{:.6}", d.as_secs_f64()));
                }
                Ok(json_text(&body))
            }
            Format::Csv => match &self.table {
                Some(t) => csv_text(t),
                None => Err(CliError::Usage(format!("--format csv is not available for `{}`", self.command))),
            },
        }
    }
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn csv_text(t: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    w.write_record(&t.header).map_err(fail)?;
    for row in &t.rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("records are UTF-8"))
}
