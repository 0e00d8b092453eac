//! Positive, sorted samples and CSV ingestion.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Waiting times (minutes) before service of 100 bank customers.
pub const BANK_WAITING_TIMES_CSV: &str = include_str!("../data/bank_waiting_times.csv");

/// An immutable sample of positive finite values, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    values: Vec<f64>,
}

impl Dataset {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Data("dataset is empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Data(format!(
                "values must be positive and finite, found {bad}"
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.n() as f64
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// The bundled bank waiting-time sample.
pub fn bank_waiting_times() -> Dataset {
    parse_csv(BANK_WAITING_TIMES_CSV).expect("bundled fixture is valid")
}

/// Reads a dataset from a file holding one value per line or
/// comma-separated values. A single header line is allowed.
pub fn ingest_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    parse_csv(&text)
}

pub fn parse_csv(text: &str) -> Result<Dataset> {
    let mut values = Vec::new();
    let mut seen_content = false;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(',')
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        let first_content = !seen_content;
        seen_content = true;
        match parsed {
            Ok(row) => {
                for v in row {
                    if !(v.is_finite() && v > 0.0) {
                        return Err(Error::Data(format!(
                            "line {line_no}: value {v} is not positive and finite"
                        )));
                    }
                    values.push(v);
                }
            }
            Err(_) if first_content => continue,
            Err(e) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("{e} in {line:?}"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Data("no data values found".into()));
    }
    Dataset::new(values)
}
