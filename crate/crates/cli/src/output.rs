//! Tables and their CSV/JSON emission.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::{Format, Resolved};
use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i8> for Cell {
    fn from(v: i8) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // Shortest round-trip forms, always with a '.' decimal point.
            Cell::Float(v) if *v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&v.abs()) => v.to_string(),
            Cell::Float(v) => format!("{v:e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// What a command produces: a table, optionally replaced by a richer JSON
/// document under `--emit json`.
pub struct Artifact {
    pub table: Table,
    pub json: Option<Value>,
}

impl From<Table> for Artifact {
    fn from(table: Table) -> Self {
        Artifact { table, json: None }
    }
}

fn meta(cfg: &Resolved) -> Vec<(&'static str, String)> {
    vec![
        ("version", env!("CARGO_PKG_VERSION").to_string()),
        ("command", cfg.command.to_string()),
        ("seed", cfg.seed.to_string()),
        ("tol_eig", format!("{:e}", cfg.tol_eig)),
        ("tol_id", format!("{:e}", cfg.tol_id)),
    ]
}

pub fn render(cfg: &Resolved, artifact: &Artifact) -> Result<Vec<u8>, CliError> {
    match cfg.emit {
        Format::Csv => {
            let mut buf = Vec::new();
            let fields: Vec<String> = meta(cfg)[1..].iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(buf, "# fuzzy-dirac {} {}", env!("CARGO_PKG_VERSION"), fields.join(" "))?;
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(buf);
            w.write_record(&artifact.table.columns)?;
            for row in &artifact.table.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let meta: Map<String, Value> = meta(cfg).into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let data = artifact.json.clone().unwrap_or_else(|| artifact.table.json_rows());
            let doc = json!({ "meta": meta, "data": data });
            let mut buf = serde_json::to_vec_pretty(&doc)?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}

pub fn emit(cfg: &Resolved, artifact: &Artifact) -> Result<(), CliError> {
    let bytes = render(cfg, artifact)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}
