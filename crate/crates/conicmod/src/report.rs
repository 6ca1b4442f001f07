//! Machine-readable output records shared by every CLI subcommand.
//!
//! CSV uses comma separation with a header row and no quoting; complex
//! numbers are serialized as two columns re, im. JSON streams emit one
//! object per record, newline-delimited.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Serialization format for CLI output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// One typed field of a record.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    UInt(u64),
    Float(f64),
    Text(String),
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Int(v) => json!(v),
            Field::UInt(v) => json!(v),
            Field::Float(v) => json!(v),
            Field::Text(v) => json!(v),
        }
    }

    /// Fixed-width rendering for CSV/table cells; floats carry 12 decimal
    /// places so golden files are reproducible.
    fn render(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::UInt(v) => v.to_string(),
            Field::Float(v) => format!("{v:.12e}"),
            Field::Text(v) => v.clone(),
        }
    }
}

/// One output record: the command that produced it plus named inputs and
/// outputs in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, Field)>,
    pub outputs: Vec<(String, Field)>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: Field) -> Self {
        self.inputs.push((key.to_string(), value));
        self
    }

    pub fn output(mut self, key: &str, value: Field) -> Self {
        self.outputs.push((key.to_string(), value));
        self
    }

    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        let mut inputs = Map::new();
        for (k, v) in &self.inputs {
            inputs.insert(k.clone(), v.to_json());
        }
        obj.insert("inputs".into(), Value::Object(inputs));
        let mut outputs = Map::new();
        for (k, v) in &self.outputs {
            outputs.insert(k.clone(), v.to_json());
        }
        obj.insert("outputs".into(), Value::Object(outputs));
        Value::Object(obj)
    }

    fn columns(&self) -> Vec<(&str, &Field)> {
        self.inputs
            .iter()
            .chain(self.outputs.iter())
            .map(|(k, v)| (k.as_str(), v))
            .collect()
    }
}

/// Render a stream of records (all with the same column shape for
/// CSV/table) into the requested format. The returned string always ends
/// with a newline when records are present.
pub fn render_records(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in records {
                let _ = writeln!(out, "{}", r.to_json());
            }
            out
        }
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = records.first() {
                let header: Vec<&str> = first.columns().iter().map(|(k, _)| *k).collect();
                let _ = writeln!(out, "{}", header.join(","));
                for r in records {
                    let row: Vec<String> =
                        r.columns().iter().map(|(_, v)| v.render()).collect();
                    let _ = writeln!(out, "{}", row.join(","));
                }
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            if let Some(first) = records.first() {
                let headers: Vec<String> =
                    first.columns().iter().map(|(k, _)| k.to_string()).collect();
                let rows: Vec<Vec<String>> = records
                    .iter()
                    .map(|r| r.columns().iter().map(|(_, v)| v.render()).collect())
                    .collect();
                let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
                for row in &rows {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(cell.len());
                    }
                }
                let fmt_row = |cells: &[String]| {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{:>width$}", c, width = widths[i]))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                let _ = writeln!(out, "{}", fmt_row(&headers));
                for row in &rows {
                    let _ = writeln!(out, "{}", fmt_row(row));
                }
            }
            out
        }
    }
}
