//! CSV and JSON report files.
//!
//! Every command produces a [`Table`]: fixed columns, one row per result.
//! CSV holds the columns only. JSON holds the same rows as objects plus an
//! optional `details` object per row (violation witnesses, notes).
//! Floats are written in Rust's shortest round-trip form, so files are
//! byte-identical across runs and thread counts.

use std::fs;
use std::path::{Path, PathBuf};

use bohr_core::{Status, VerificationReport};
use serde_json::{json, Map, Value};

use crate::config::OutputFormat;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u64),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => format_float(*x),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(n) => json!(n),
            // JSON has no NaN or infinities.
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => Value::String(format_float(*x)),
        }
    }
}

/// Shortest round-trip form; exponent notation outside `[1e-4, 1e16)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub details: Option<Value>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: &'static [&'static str],
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(headers: &'static [&'static str]) -> Self {
        Self {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: Vec<Cell>, status: Status, details: Option<Value>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(Row {
            cells,
            details,
            status,
        });
    }

    /// Worst row status: fail, then finding, then degenerate, then pass.
    pub fn status(&self) -> Status {
        let rank = |s: Status| match s {
            Status::Fail => 3,
            Status::Finding => 2,
            Status::Degenerate => 1,
            Status::Pass => 0,
        };
        self.rows
            .iter()
            .map(|r| r.status)
            .max_by_key(|&s| rank(s))
            .unwrap_or(Status::Pass)
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.headers)?;
        for row in &self.rows {
            w.write_record(row.cells.iter().map(Cell::csv))?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }

    pub fn to_json(&self, command: &str) -> Result<Vec<u8>, CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (h, c) in self.headers.iter().zip(&row.cells) {
                    obj.insert((*h).to_string(), c.json());
                }
                if let Some(d) = &row.details {
                    obj.insert("details".into(), d.clone());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "command": command, "rows": rows });
        let mut bytes = serde_json::to_vec_pretty(&doc)?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    /// Writes `<dir>/<command>-<seed>.<ext>` and returns the path.
    pub fn write(
        &self,
        dir: &Path,
        command: &str,
        seed: u64,
        format: OutputFormat,
    ) -> Result<PathBuf, CliError> {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{command}-{seed}.{}", format.extension()));
        let bytes = match format {
            OutputFormat::Csv => self.to_csv()?,
            OutputFormat::Json => self.to_json(command)?,
        };
        fs::write(&path, bytes)?;
        Ok(path)
    }
}

/// Columns of verification reports.
pub const REPORT_HEADERS: &[&str] = &[
    "inequality_id",
    "family",
    "seed",
    "samples",
    "d",
    "degree",
    "r_grid",
    "t_grid",
    "grid",
    "tol",
    "slack",
    "evaluations",
    "min_margin",
    "violations",
    "status",
];

/// Run-level fields shared by every report row.
#[derive(Debug, Clone, Copy)]
pub struct ReportContext<'a> {
    pub family: &'a str,
    pub dim: usize,
    pub degree: usize,
    pub r_grid: usize,
    pub t_grid: usize,
    pub tol: f64,
}

/// Appends one report row. `values` (if any) is stored under
/// `details.values` in JSON.
pub fn push_report(
    table: &mut Table,
    ctx: &ReportContext<'_>,
    report: &VerificationReport,
    values: Option<Value>,
) {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "sample": v.sample,
                "fingerprint": v.fingerprint,
                "margin": Cell::Float(v.margin).json(),
            })
        })
        .collect();
    let mut details = json!({
        "mode": match report.mode {
            bohr_core::Mode::Assert => "assert",
            bohr_core::Mode::Report => "report",
        },
        "violations": violations,
        "notes": report.notes,
    });
    if let Some(v) = values {
        details["values"] = v;
    }
    table.push(
        vec![
            report.inequality_id.as_str().into(),
            ctx.family.into(),
            report.seed.into(),
            report.samples.into(),
            ctx.dim.into(),
            ctx.degree.into(),
            ctx.r_grid.into(),
            ctx.t_grid.into(),
            report.grid.as_str().into(),
            ctx.tol.into(),
            report.slack.into(),
            report.evaluations.into(),
            report.min_margin.into(),
            report.violation_count.into(),
            report.status().name().into(),
        ],
        report.status(),
        Some(details),
    );
}
