//! Tabular output shared by every subcommand.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(title: impl Into<String>, columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            title: title.into(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.columns.len(), "row width in table {}", self.title);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// Everything a subcommand prints.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub tables: Vec<Table>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Document {
    pub fn push(&mut self, table: Table) {
        self.tables.push(table);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.render_text()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "# {}", table.title);
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|c| {
                    table
                        .rows
                        .iter()
                        .map(|r| r[c].chars().count())
                        .chain([table.columns[c].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&table.columns));
            for row in &table.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for note in &self.notes {
                let _ = writeln!(out, "note: {note}");
            }
        }
        out
    }

    /// One CSV block per table, separated by blank lines. Notes are omitted.
    fn render_csv(&self) -> Result<String> {
        let mut out = Vec::new();
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push(b'\n');
            }
            let mut w = csv::Writer::from_writer(&mut out);
            let io = |e: csv::Error| Error::Parse(e.to_string());
            w.write_record(&table.columns).map_err(io)?;
            for row in &table.rows {
                w.write_record(row).map_err(io)?;
            }
            w.flush().map_err(|e| Error::Parse(e.to_string()))?;
        }
        String::from_utf8(out).map_err(|e| Error::Parse(e.to_string()))
    }
}
