use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{Command, Format};

pub const SCHEMA: &str = "rmt/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    /// Shortest decimal that round-trips; exponent form for very large or
    /// small magnitudes.
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn records(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> =
                        self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), serde_json::to_value(v).unwrap_or(Value::Null))).collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }
}

/// Result of one command: rows for CSV, and optionally a richer JSON
/// payload that replaces the rows in JSON output.
pub struct Artifact {
    pub table: Table,
    pub json: Option<Value>,
}

pub fn render(config: &Command, artifact: &Artifact, format: Format) -> io::Result<Vec<u8>> {
    let cfg = serde_json::to_value(config).map_err(io::Error::other)?;
    match format {
        Format::Csv => {
            let mut buf = format!("# rmt {} {}\n", rmt_core::VERSION, cfg).into_bytes();
            {
                let mut w = csv::Writer::from_writer(&mut buf);
                w.write_record(&artifact.table.columns)?;
                for row in &artifact.table.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()?;
            }
            Ok(buf)
        }
        Format::Json => {
            let result = artifact.json.clone().unwrap_or_else(|| artifact.table.records());
            let doc = json!({
                "schema": SCHEMA,
                "version": rmt_core::VERSION,
                "config": cfg,
                "result": result,
            });
            let mut buf = serde_json::to_vec_pretty(&doc).map_err(io::Error::other)?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}

/// Writes to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}
