//! Dataset serialization.
//!
//! CSV: header row, one record per line, 17 significant digits
//! (`{:.16e}`), `.` as the decimal point regardless of locale, and a
//! newline after the final row. Divergent sensitivities serialize as the
//! string `inf`; masked empirical sensitivities as `unreliable`.
//!
//! JSON: a single object with top-level keys `config`, `records` and
//! `summary`. Non-finite floats are encoded as the strings `inf`, `-inf`
//! and `nan` so the document stays standard JSON.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;

/// A float cell that keeps full precision in CSV and degrades non-finite
/// values to marker strings in both formats.
#[derive(Debug, Clone, Copy)]
pub struct Cell(pub f64);

impl Cell {
    pub fn csv(&self) -> String {
        let v = self.0;
        if v.is_nan() {
            "nan".into()
        } else if v.is_infinite() {
            if v > 0.0 {
                "inf".into()
            } else {
                "-inf".into()
            }
        } else {
            format!("{:.16e}", v)
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_nan() {
            serializer.serialize_str("nan")
        } else if v.is_infinite() {
            serializer.serialize_str(if v > 0.0 { "inf" } else { "-inf" })
        } else {
            serializer.serialize_f64(v)
        }
    }
}

/// JSON value for an optional quantity that may also be non-finite.
pub fn cell_value(v: f64) -> Value {
    serde_json::to_value(Cell(v)).expect("cell serialization cannot fail")
}

pub fn optional_value(v: Option<f64>) -> Value {
    match v {
        Some(x) => cell_value(x),
        None => Value::Null,
    }
}

/// One complete dataset, ready to serialize in either format.
pub struct Document {
    pub config: RunConfig,
    pub csv_header: &'static str,
    pub csv_rows: Vec<String>,
    pub records: Value,
    pub summary: Value,
}

impl Document {
    pub fn render_csv(&self) -> String {
        let mut text = String::with_capacity(64 * (self.csv_rows.len() + 1));
        text.push_str(self.csv_header);
        text.push('\n');
        for row in &self.csv_rows {
            text.push_str(row);
            text.push('\n');
        }
        text
    }

    pub fn render_json(&self) -> Result<String, CliError> {
        let doc = serde_json::json!({
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
        });
        let mut text = serde_json::to_string_pretty(&doc)
            .map_err(|e| CliError::Io(format!("JSON serialization failed: {e}")))?;
        text.push('\n');
        Ok(text)
    }
}

/// Where a dataset goes: `--out` path or standard output.
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn from_path(path: Option<PathBuf>) -> Self {
        match path {
            Some(p) => Self::File(p),
            None => Self::Stdout,
        }
    }

    pub fn write(&self, text: &str) -> Result<(), CliError> {
        match self {
            Self::Stdout => {
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
            }
            Self::File(path) => {
                write_file(path, text)?;
            }
        }
        Ok(())
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Render and write a document in the configured format.
pub fn emit(document: &Document, sink: &Sink) -> Result<(), CliError> {
    let text = match document.config.format {
        crate::config::OutputFormat::Csv => document.render_csv(),
        crate::config::OutputFormat::Json => document.render_json()?,
    };
    sink.write(&text)
}
