//! Tabular output in CSV or JSON with fixed significant digits.

use serde::Serialize;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
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

/// `v` to `digits` significant digits. Plain notation for moderate
/// magnitudes, exponent notation otherwise.
pub fn format_real(v: f64, digits: u32) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let exponent = v.abs().log10().floor() as i32;
    if !(-4..15).contains(&exponent) {
        let s = format!("{:.*e}", digits.saturating_sub(1) as usize, v);
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        let mantissa = if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self, digits: u32) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c, digits)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_rows(&self, digits: u32) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(name.to_string(), json_cell(cell, digits));
                }
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

fn csv_cell(cell: &Cell, digits: u32) -> String {
    match cell {
        Cell::Real(v) => format_real(*v, digits),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Empty => String::new(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

fn json_cell(cell: &Cell, digits: u32) -> Value {
    match cell {
        Cell::Real(v) => {
            let rounded: f64 = format_real(*v, digits).parse().unwrap_or(*v);
            Number::from_f64(rounded).map_or(Value::Null, Value::Number)
        }
        Cell::Int(v) => Value::from(*v),
        Cell::Bool(v) => Value::Bool(*v),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Empty => Value::Null,
    }
}

/// Provenance of one output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub parameters: Value,
    pub version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub warnings: Vec<String>,
}

impl RunManifest {
    pub fn new(parameters: Value) -> Self {
        Self {
            command: std::env::args().collect(),
            parameters,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            warnings: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_real(1.9082645781707777, 12), "1.90826457817");
        assert_eq!(format_real(68.9956534721, 6), "68.9957");
        assert_eq!(format_real(3.0, 12), "3");
        assert_eq!(format_real(-0.25, 3), "-0.25");
        assert_eq!(format_real(2.5e-11, 3), "2.5e-11");
        assert_eq!(format_real(1e-6, 12), "1e-6");
        assert_eq!(format_real(0.0, 5), "0");
        assert_eq!(format_real(123456.0, 3), "123456");
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["n", "E", "note"]);
        t.push(vec![0usize.into(), 1.5.into(), "a,b".into()]);
        t.push(vec![1usize.into(), Cell::Empty, "plain".into()]);
        assert_eq!(t.to_csv(4), "n,E,note\n0,1.5,\"a,b\"\n1,,plain\n");
        let j = t.to_json_rows(4);
        assert_eq!(j[0]["E"], 1.5);
        assert!(j[1]["E"].is_null());
    }
}
