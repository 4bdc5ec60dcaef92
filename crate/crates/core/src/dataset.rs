//! Tabular dataset emission: CSV (header row, full-precision decimal,
//! comma-separated, newline-terminated, UTF-8) and JSON. Row order is
//! deterministic and numbers use the shortest round-trip representation,
//! so everything parses back exactly.

use std::io::{self, Write};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(columns: &[&str]) -> Self {
        Dataset {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_full(*v)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let json = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        writeln!(out, "{json}")
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}

/// Shortest decimal that round-trips to the same f64.
pub fn format_full(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_values_round_trip() {
        let mut d = Dataset::new(&["a", "b"]);
        d.push(vec![std::f64::consts::PI, 1.0 / 3.0]);
        d.push(vec![-0.0001234567890123456, 1e300]);
        let csv = d.to_csv_string();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "a,b");
        for (line, row) in lines.zip(&d.rows) {
            for (cell, want) in line.split(',').zip(row) {
                let got: f64 = cell.parse().unwrap();
                assert_eq!(got, *want);
            }
        }
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn json_is_well_formed() {
        let mut d = Dataset::new(&["x"]);
        d.push(vec![2.5]);
        let mut buf = Vec::new();
        d.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["columns"][0], "x");
        assert_eq!(v["rows"][0][0], 2.5);
    }
}
