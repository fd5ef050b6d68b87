//! Rendering of command results as tables, CSV or JSON, and routing of the
//! rendered data and the human summary to files or standard streams.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliResult;
use crate::manifest::{sidecar_path, RunManifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// Flags shared by every data-writing subcommand.
#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write data here instead of standard output.
    #[arg(long)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Master random seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Timestamp to record in the manifest (RFC 3339); defaults to now.
    #[arg(long)]
    #[serde(skip)]
    pub timestamp: Option<String>,
}

/// What a command produced, in every format it can be written as.
pub struct Rendered {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub data: serde_json::Value,
    /// Human-readable report, always shown.
    pub summary: String,
}

impl Rendered {
    fn body(&self, format: Format, manifest: &RunManifest) -> CliResult<String> {
        Ok(match format {
            Format::Table => table(&self.header, &self.rows),
            Format::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                writer.write_record(&self.header)?;
                for row in &self.rows {
                    writer.write_record(row)?;
                }
                let bytes = writer.into_inner().map_err(|e| e.into_error())?;
                String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8")
            }
            Format::Json => {
                let doc = serde_json::json!({ "manifest": manifest, "data": self.data });
                serde_json::to_string_pretty(&doc)? + "\n"
            }
        })
    }

    /// Writes the data and summary.
    ///
    /// With `--output` the data goes to the file (plus a manifest sidecar
    /// unless the format embeds it) and the summary to standard output.
    /// Without it, tables follow the summary on standard output while
    /// machine formats take standard output alone and push the summary to
    /// standard error.
    pub fn emit(&self, common: &Common, manifest: &RunManifest) -> CliResult<()> {
        let body = self.body(common.format, manifest)?;
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        match &common.output {
            Some(path) => {
                std::fs::write(path, &body)?;
                if common.format != Format::Json {
                    std::fs::write(sidecar_path(path), manifest.to_json()?)?;
                }
                out.write_all(self.summary.as_bytes())?;
            }
            None if common.format == Format::Table => {
                out.write_all(self.summary.as_bytes())?;
                out.write_all(b"\n")?;
                out.write_all(body.as_bytes())?;
            }
            None => {
                std::io::stderr().write_all(self.summary.as_bytes())?;
                out.write_all(body.as_bytes())?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Shortest round-trip decimal form; empty for missing values.
pub fn num(x: f64) -> String {
    match serde_json::Number::from_f64(x) {
        Some(n) => n.to_string(),
        None => x.to_string(),
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Right-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut text = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        text.push_str(parts.join("  ").trim_end());
        text.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    text
}

/// Fixed six-decimal form for tables and summaries.
pub fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0, 2.5310242469692907, 1e-300, -3.25e12] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.0), "1.0");
        assert_eq!(opt_num(None), "");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "long"], &[vec!["123".into(), "x".into()]]);
        assert_eq!(t, "  a  long\n123     x\n");
    }
}
