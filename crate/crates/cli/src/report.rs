//! Report emission in JSON, aligned text, or CSV.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// A CSV rendering: header plus rows, already formatted.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn write_to(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

pub fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Write `report` in the requested format. `table` supplies the CSV form;
/// formats without one are rejected by the caller beforehand.
pub fn emit<T: Serialize>(
    report: &T,
    format: Format,
    table: Option<&Table>,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Text => {
            let value = serde_json::to_value(report)?;
            let mut lines = Vec::new();
            flatten("", &value, &mut lines);
            let width = lines
                .iter()
                .map(|(k, _)| k.chars().count())
                .max()
                .unwrap_or(0);
            for (k, v) in lines {
                writeln!(out, "{k:<width$}  {v}")?;
            }
        }
        Format::Csv => {
            table.expect("csv checked by caller").write_to(out)?;
        }
    }
    out.flush()
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Arrays of scalars stay on one line; everything else is expanded into
/// dotted key paths.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            if map.is_empty() {
                out.push((prefix.to_string(), "{}".into()));
            }
            for (k, child) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, child, out);
            }
        }
        Value::Array(items) => {
            let flat: Option<Vec<String>> = items.iter().map(scalar).collect();
            match flat {
                Some(parts) => out.push((prefix.to_string(), format!("[{}]", parts.join(", ")))),
                None => {
                    for (i, child) in items.iter().enumerate() {
                        flatten(&format!("{prefix}[{i}]"), child, out);
                    }
                }
            }
        }
        other => out.push((prefix.to_string(), scalar(other).unwrap_or_default())),
    }
}
