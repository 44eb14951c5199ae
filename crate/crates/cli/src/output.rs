//! Machine-readable result records and their JSON / CSV rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    /// Header row, comma-delimited, full-precision scientific notation.
    Csv,
}

/// One computed quantity with the inputs that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    /// What the value is (e.g. `partial_sum`, `oracle`, `bound`).
    pub quantity: String,
    pub inputs: BTreeMap<String, String>,
    pub value_re: f64,
    pub value_im: f64,
    pub error_abs: Option<f64>,
    pub error_rel: Option<f64>,
}

impl Record {
    pub fn new(quantity: impl Into<String>, inputs: &BTreeMap<String, String>, value: Complex64) -> Self {
        Self {
            quantity: quantity.into(),
            inputs: inputs.clone(),
            value_re: value.re,
            value_im: value.im,
            error_abs: None,
            error_rel: None,
        }
    }

    /// Sets the error fields against a reference value.
    pub fn against(mut self, reference: Complex64) -> Self {
        let abs = (Complex64::new(self.value_re, self.value_im) - reference).norm();
        self.error_abs = Some(abs);
        self.error_rel = Some(abs / reference.norm());
        self
    }

    pub fn with_input(mut self, k: &str, v: impl ToString) -> Self {
        self.inputs.insert(k.to_string(), v.to_string());
        self
    }
}

/// Full-precision scientific notation (shortest round-trip digits).
pub fn sci(x: f64) -> String {
    format!("{x:e}")
}

pub fn write_records<W: Write>(out: &mut W, records: &[Record], format: Format) -> Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let keys: BTreeSet<&String> = records.iter().flat_map(|r| r.inputs.keys()).collect();
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["quantity".to_string()];
            header.extend(keys.iter().map(|k| k.to_string()));
            header.extend(["value_re", "value_im", "error_abs", "error_rel"].map(String::from));
            w.write_record(&header)?;
            for r in records {
                let mut row = vec![r.quantity.clone()];
                row.extend(keys.iter().map(|k| r.inputs.get(*k).cloned().unwrap_or_default()));
                row.push(sci(r.value_re));
                row.push(sci(r.value_im));
                row.push(r.error_abs.map(sci).unwrap_or_default());
                row.push(r.error_rel.map(sci).unwrap_or_default());
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Writes a plain table with the given header (CSV rules, scientific floats
/// already formatted by the caller).
pub fn write_table<W: Write>(out: &mut W, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}
