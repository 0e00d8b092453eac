//! Tabulated curves for plotting.

use std::io::Write;

use serde::Serialize;

use crate::data::Dataset;
use crate::dist::{self, TlgParams};
use crate::error::{Error, Result};

/// Evenly spaced evaluation grid on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points, got {points}"
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidParameter(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
        })
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.x_max - self.x_min) / (self.points - 1) as f64;
        (0..self.points).map(move |i| {
            if i + 1 == self.points {
                self.x_max
            } else {
                self.x_min + step * i as f64
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveTable {
    pub x: Vec<f64>,
    pub pdf: Vec<f64>,
    pub cdf: Vec<f64>,
    pub sf: Vec<f64>,
    pub hazard: Vec<f64>,
}

impl CurveTable {
    pub fn evaluate(params: &TlgParams, grid: &Grid) -> Result<Self> {
        let mut table = CurveTable {
            x: Vec::with_capacity(grid.points),
            pdf: Vec::with_capacity(grid.points),
            cdf: Vec::with_capacity(grid.points),
            sf: Vec::with_capacity(grid.points),
            hazard: Vec::with_capacity(grid.points),
        };
        for x in grid.xs() {
            table.x.push(x);
            table.pdf.push(dist::tlg_pdf(params, x));
            table.cdf.push(dist::tlg_cdf(params, x));
            table.sf.push(dist::tlg_sf(params, x));
            table.hazard.push(dist::tlg_hazard(params, x)?);
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// CSV with header `x,pdf,cdf,sf,hazard`.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "x,pdf,cdf,sf,hazard")?;
        for i in 0..self.len() {
            writeln!(
                out,
                "{},{},{},{},{}",
                self.x[i], self.pdf[i], self.cdf[i], self.sf[i], self.hazard[i]
            )?;
        }
        Ok(())
    }
}

/// Empirical cdf evaluated at each sorted observation; tied values share
/// the cdf of the last tie.
pub fn empirical_cdf(data: &Dataset) -> Vec<(f64, f64)> {
    let v = data.values();
    let n = v.len() as f64;
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[i] {
            j += 1;
        }
        for _ in i..=j {
            out.push((v[i], (j + 1) as f64 / n));
        }
        i = j + 1;
    }
    out
}

pub fn write_empirical_csv(data: &Dataset, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "x,ecdf")?;
    for (x, f) in empirical_cdf(data) {
        writeln!(out, "{x},{f}")?;
    }
    Ok(())
}
