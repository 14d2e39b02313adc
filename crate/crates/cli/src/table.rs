use std::path::Path;

use jcsim_core::io::fmt_sig;

/// Column-labeled rows rendered to CSV with deterministic float formatting.
pub struct ResultTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl ResultTable {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: Vec<Vec<String>>) {
        for row in rows {
            self.push(row);
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }
}

/// 12-significant-digit cell.
pub fn sig(x: f64) -> String {
    fmt_sig(x)
}
