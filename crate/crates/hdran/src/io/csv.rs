//! Deterministic CSV emission.
//!
//! Floats are rendered in scientific notation with 17 significant digits,
//! which round-trips every f64 exactly; rows are written in the order the
//! caller provides, so repeated runs produce identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::FileError;

/// A value in a CSV row.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    Uint(u64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Uint(v)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map(Into::into).unwrap_or(Field::Empty)
    }
}

/// 17 significant digits, enough to reconstruct the exact f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header plus data rows; every row must match the header width.
#[derive(Debug, Clone)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<Field>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for field in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match field {
                    Field::Int(v) => write!(out, "{v}").unwrap(),
                    Field::Uint(v) => write!(out, "{v}").unwrap(),
                    Field::Float(v) => out.push_str(&format_float(*v)),
                    Field::Text(v) => out.push_str(v),
                    Field::Empty => {}
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), FileError> {
        fs::write(path, self.render()).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}
