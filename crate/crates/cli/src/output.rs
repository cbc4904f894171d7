use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

/// A rectangular result: every command reduces to one of these.
#[derive(Debug, Clone, Default)]
pub struct Rows {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Replaces the column layout in human mode when set.
    pub human: Option<String>,
}

impl Rows {
    pub fn new(headers: &[&'static str]) -> Self {
        Self {
            headers: headers.to_vec(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Human => Ok(self.human.clone().unwrap_or_else(|| self.columns())),
            Format::Csv => self.csv(),
            Format::Json => Ok(self.json_lines()),
        }
    }

    fn columns(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.headers.clone());
        for row in &self.rows {
            out += &line(row.iter().map(String::as_str).collect());
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// One JSON object per row. Cells named `pass` become booleans.
    fn json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let mut obj = Map::new();
            for (h, cell) in self.headers.iter().zip(row) {
                let value = match (*h, cell.as_str()) {
                    ("pass", "true") => Value::Bool(true),
                    ("pass", "false") => Value::Bool(false),
                    _ => Value::String(cell.clone()),
                };
                obj.insert((*h).to_string(), value);
            }
            out += &Value::Object(obj).to_string();
            out.push('\n');
        }
        out
    }
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Rows {
        let mut r = Rows::new(&["name", "value", "pass"]);
        r.push(vec!["a".into(), "1, 2".into(), "true".into()]);
        r.push(vec!["bb".into(), "3".into(), "false".into()]);
        r
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(
            sample().render(Format::Csv).unwrap(),
            "name,value,pass\na,\"1, 2\",true\nbb,3,false\n"
        );
    }

    #[test]
    fn json_lines_with_boolean_pass() {
        let text = sample().render(Format::Json).unwrap();
        let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["pass"], Value::Bool(true));
        assert_eq!(first["value"], "1, 2");
    }

    #[test]
    fn human_columns_align() {
        let text = sample().render(Format::Human).unwrap();
        assert_eq!(text.lines().next().unwrap(), "name  value  pass");
        assert_eq!(text.lines().nth(2).unwrap(), "bb    3      false");
    }
}
