use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::args::{Format, OutputArgs};

/// A rendered report in both formats, written once the command finishes.
pub struct Report {
    json: String,
    csv: String,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, header: &[&str], rows: Vec<Vec<String>>) -> Result<Self> {
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        for row in rows {
            writer.write_record(&row)?;
        }
        let csv = String::from_utf8(writer.into_inner()?)?;
        Ok(Self { json, csv })
    }

    pub fn emit(&self, output: &OutputArgs) -> Result<()> {
        let text = match output.format {
            Format::Json => &self.json,
            Format::Csv => &self.csv,
        };
        match &output.out {
            Some(path) => write_file(path, text),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Formats floats identically across platforms and runs.
pub fn num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}
