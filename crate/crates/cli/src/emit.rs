//! Deterministic CSV / JSON emission.  Floats carry 17 significant digits
//! in CSV for round-trip fidelity; JSON numbers use serde_json's shortest
//! round-trip form.  The timestamp lives only in the header so bodies of
//! identical invocations are byte-identical.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use trapbec_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this path instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Suppress the config/timestamp header (CSV) and timestamp (JSON).
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Clone)]
pub enum Cell {
    F(f64),
    S(String),
    B(bool),
    I(u64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(x) => fmt_float(*x),
            Cell::S(s) => s.clone(),
            Cell::B(b) => b.to_string(),
            Cell::I(i) => i.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(x) => json!(x),
            Cell::S(s) => json!(s),
            Cell::B(b) => json!(b),
            Cell::I(i) => json!(i),
        }
    }
}

/// 17 significant digits, '.' decimal, locale independent.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Free-form trailer lines (e.g. pass/fail summaries); header-gated in
    /// CSV, always present in JSON under "notes".
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Table {
        Table { command, columns, rows: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn emit(table: &Table, config: &BTreeMap<String, Value>, output: &OutputArgs) -> Result<()> {
    let text = match output.format {
        Format::Csv => render_csv(table, config, output.no_header),
        Format::Json => render_json(table, config, output.no_header),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::domain(format!("--out {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::domain(format!("stdout: {e}")))
        }
    }
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn render_csv(table: &Table, config: &BTreeMap<String, Value>, no_header: bool) -> String {
    let mut out = String::new();
    if !no_header {
        out.push_str(&format!("# command: {}\n", table.command));
        for (k, v) in config {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&format!("# generated: {}\n", timestamp()));
        out.push_str(&table.columns.join(","));
        out.push('\n');
    }
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    if !no_header {
        for note in &table.notes {
            out.push_str(&format!("# {note}\n"));
        }
    }
    out
}

fn render_json(table: &Table, config: &BTreeMap<String, Value>, no_header: bool) -> String {
    let data: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: serde_json::Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(c, cell)| (c.to_string(), cell.json()))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut doc = serde_json::Map::new();
    doc.insert("command".into(), json!(table.command));
    doc.insert("config".into(), json!(config));
    if !no_header {
        doc.insert("generated".into(), json!(timestamp()));
    }
    doc.insert("data".into(), Value::Array(data));
    if !table.notes.is_empty() {
        doc.insert("notes".into(), json!(table.notes));
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}
