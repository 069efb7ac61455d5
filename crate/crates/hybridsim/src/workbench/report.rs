//! Tabular run output and its CSV/JSON emitters.
//!
//! A `Report` is an ordered list of typed rows under named, unit-suffixed
//! columns, each column carrying a provenance tag (the formula it came
//! from, or `"plumbing"` for bookkeeping). Emission is byte-deterministic:
//! numbers print with 12 significant digits, maps are ordered, and the
//! metadata carries no wall-clock timestamp unless one is stamped in
//! explicitly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Provenance tag for bookkeeping columns.
pub const PLUMBING: &str = "plumbing";

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Text(String),
}

impl Value {
    pub fn text(s: &str) -> Value {
        Value::Text(s.to_string())
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            Value::Text(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    /// Unit-suffixed name, e.g. `separation_m` or `g0_over_2pi_Hz`.
    pub name: String,
    /// Formula tag or [`PLUMBING`].
    pub provenance: &'static str,
}

impl Column {
    pub fn new(name: &str, provenance: &'static str) -> Self {
        Column { name: name.to_string(), provenance }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Metadata {
    pub tool_version: String,
    /// SHA-256 of the input config bytes.
    pub input_sha256: String,
    /// Optional wall-clock stamp; omitted by default so repeated runs are
    /// byte-identical.
    pub generated_at: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub metadata: Metadata,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    /// Chart hint: log-scale the x axis (first numeric column).
    pub x_log: bool,
    /// Budget scenarios record overall pass/fail for the CLI exit code.
    pub budget_pass: Option<bool>,
    /// One-line human summary for stderr; never part of the emitted bytes.
    pub summary: Option<String>,
}

impl Report {
    pub fn new(columns: Vec<Column>) -> Self {
        Report {
            metadata: Metadata {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                ..Metadata::default()
            },
            columns,
            rows: Vec::new(),
            x_log: false,
            budget_pass: None,
            summary: None,
        }
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row arity mismatch");
        self.rows.push(row);
    }

    /// RFC-4180 CSV: header row, LF line endings, `.` decimal separator,
    /// 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> =
            self.columns.iter().map(|c| csv_escape(&c.name)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::Num(x) => fmt_sig(*x),
                    Value::Text(s) => csv_escape(s),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Single JSON object `{metadata, rows, provenance}` with
    /// deterministically ordered keys.
    pub fn to_json(&self) -> String {
        use serde_json::{json, Map, Value as J};
        let mut meta = Map::new();
        meta.insert("tool_version".into(), json!(self.metadata.tool_version));
        meta.insert("input_sha256".into(), json!(self.metadata.input_sha256));
        meta.insert(
            "generated_at".into(),
            json!(self.metadata.generated_at.clone().unwrap_or_default()),
        );

        let rows: Vec<J> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj: BTreeMap<&str, J> = BTreeMap::new();
                for (col, v) in self.columns.iter().zip(row) {
                    let jv = match v {
                        Value::Num(x) => json!(x),
                        Value::Text(s) => json!(s),
                    };
                    obj.insert(col.name.as_str(), jv);
                }
                json!(obj)
            })
            .collect();

        let provenance: BTreeMap<&str, &str> = self
            .columns
            .iter()
            .map(|c| (c.name.as_str(), c.provenance))
            .collect();

        let doc = json!({
            "metadata": J::Object(meta),
            "rows": rows,
            "provenance": provenance,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serialization");
        s.push('\n');
        s
    }

    /// Human-readable table for stdout: key/value layout for a single row,
    /// aligned columns otherwise.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let cell = |v: &Value| match v {
            Value::Num(x) => fmt_sig(*x),
            Value::Text(s) => s.clone(),
        };
        if self.rows.len() == 1 {
            let width = self.columns.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for (col, v) in self.columns.iter().zip(&self.rows[0]) {
                out.push_str(&format!("{:<width$}  {}\n", col.name, cell(v)));
            }
        } else {
            let mut widths: Vec<usize> = self.columns.iter().map(|c| c.name.len()).collect();
            let rendered: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .map(|(i, v)| {
                            let s = cell(v);
                            widths[i] = widths[i].max(s.len());
                            s
                        })
                        .collect()
                })
                .collect();
            for (i, col) in self.columns.iter().enumerate() {
                out.push_str(&format!("{:<w$}  ", col.name, w = widths[i]));
            }
            out.push('\n');
            for row in rendered {
                for (i, s) in row.iter().enumerate() {
                    out.push_str(&format!("{:<w$}  ", s, w = widths[i]));
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn to_svg(&self) -> Result<String> {
        super::svg::render_chart(self)
    }

    pub fn emit(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Table => self.to_table(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Svg => self.to_svg()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::Config(format!(
                "unknown output format `{other}` (expected table|csv|json|svg)"
            ))),
        }
    }
}

/// 12 significant digits, scientific notation, `.` decimal separator.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.11e}")
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
