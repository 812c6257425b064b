//! Report envelope, rendering and exit codes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use symdyn_core::Error;

use crate::args::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Witness,
    Satisfied,
    Violated,
    Inconclusive,
    Error,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Inconclusive(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive(_)
            | Error::PrecisionCap { .. }
            | Error::MaterializationRefused { .. } => CliError::Inconclusive(e.to_string()),
            Error::InfiniteRun { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub data: Value,
    pub timing_ms: f64,
    #[serde(skip)]
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: String, status: Status, data: Value, timing_ms: f64) -> Self {
        let exit_code = match status {
            Status::Verified | Status::Satisfied => 0,
            Status::Witness | Status::Violated => 1,
            Status::Inconclusive => 2,
            Status::Error => EXIT_INTERNAL,
        };
        Report {
            command,
            status,
            data,
            timing_ms,
            exit_code,
        }
    }

    pub fn from_error(command: String, e: CliError, timing_ms: f64) -> Self {
        let (status, code, msg) = match e {
            CliError::Usage(m) => (Status::Error, EXIT_USAGE, m),
            CliError::Inconclusive(m) => (Status::Inconclusive, 2, m),
            CliError::Internal(m) => (Status::Error, EXIT_INTERNAL, m),
        };
        let mut r = Report::new(
            command,
            status,
            serde_json::json!({ "error": msg }),
            timing_ms,
        );
        r.exit_code = code;
        r
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        if let Some(Value::String(csv)) = self.data.get("csv") {
            return csv.clone();
        }
        let mut out = String::new();
        let status = serde_json::to_value(self.status).expect("status serializes");
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "status: {}", status.as_str().unwrap_or("?")).unwrap();
        flatten(&mut out, "", &self.data);
        writeln!(out, "timing_ms: {:.3}", self.timing_ms).unwrap();
        out
    }
}

fn flatten(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(out, &p, x);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(out, &format!("{path}[{i}]"), x);
            }
        }
        Value::String(s) => writeln!(out, "{path}: {s}").unwrap(),
        other => writeln!(out, "{path}: {other}").unwrap(),
    }
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial report.
pub fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    {
        let mut f = std::fs::File::create(tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(tmp, path)
}
