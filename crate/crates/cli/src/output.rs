//! Rendering of command results as text tables, CSV or JSON.
//!
//! Text uses fixed 4-decimal numbers; CSV and JSON use the shortest
//! representation that round-trips. The JSON schema is documented in
//! `docs/json-schema.md`.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use tlg_core::curves::{empirical_cdf, CurveTable, Grid};
use tlg_core::dist::tlg_cdf;
use tlg_core::estimation::{FitResult, Interval};
use tlg_core::model_select::{ComparisonRow, Ranks};
use tlg_core::{Dataset, MomentSet, OrderSpec, SeriesConfig, TlgParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Serialize)]
struct ParamsJson {
    theta: f64,
    p: f64,
    lambda: f64,
}

impl From<&TlgParams> for ParamsJson {
    fn from(p: &TlgParams) -> Self {
        Self {
            theta: p.theta(),
            p: p.p(),
            lambda: p.lambda(),
        }
    }
}

#[derive(Serialize)]
struct FitJson<'a> {
    model: String,
    method: String,
    n: usize,
    parameters: &'static [&'static str],
    estimates: &'a [f64],
    stderr: Option<&'a [f64]>,
    cov: Option<&'a Vec<Vec<f64>>>,
    ci95: Option<&'a [Interval]>,
    loglik: f64,
    neg_loglik: f64,
    objective: f64,
    converged: bool,
    iterations: usize,
    boundary: bool,
    notes: &'a [String],
}

impl<'a> From<&'a FitResult> for FitJson<'a> {
    fn from(f: &'a FitResult) -> Self {
        Self {
            model: f.model.to_string(),
            method: f.method.to_string(),
            n: f.n,
            parameters: f.model.param_names(),
            estimates: &f.estimates,
            stderr: f.stderr.as_deref(),
            cov: f.cov.as_ref(),
            ci95: f.ci95.as_deref(),
            loglik: f.loglik,
            neg_loglik: -f.loglik,
            objective: f.objective,
            converged: f.converged,
            iterations: f.iterations,
            boundary: f.boundary,
            notes: &f.notes,
        }
    }
}

fn json_line(value: &impl Serialize, out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

pub fn fit(f: &FitResult, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                #[serde(flatten)]
                fit: FitJson<'a>,
            }
            json_line(
                &Doc {
                    command: "fit",
                    fit: f.into(),
                },
                out,
            )
        }
        Format::Csv => {
            let names = f.model.param_names();
            let mut header = vec!["model".to_string(), "method".into(), "n".into()];
            let mut row = vec![f.model.to_string(), f.method.to_string(), f.n.to_string()];
            for (i, name) in names.iter().enumerate() {
                header.push((*name).into());
                row.push(f.estimates[i].to_string());
                if let Some(se) = &f.stderr {
                    header.push(format!("{name}_se"));
                    row.push(se[i].to_string());
                }
            }
            header.extend(["neg_loglik".into(), "converged".into()]);
            row.extend([(-f.loglik).to_string(), f.converged.to_string()]);
            writeln!(out, "{}", header.join(","))?;
            writeln!(out, "{}", row.join(","))
        }
        Format::Text => {
            writeln!(out, "model: {}  method: {}  n: {}", f.model, f.method, f.n)?;
            match (&f.stderr, &f.ci95) {
                (Some(se), Some(ci)) => {
                    writeln!(out, "{:<10} {:>10} {:>10}   95% CI", "parameter", "estimate", "s.e.")?;
                    for (i, name) in f.model.param_names().iter().enumerate() {
                        writeln!(
                            out,
                            "{name:<10} {:>10.4} {:>10.4}   [{:.4}, {:.4}]",
                            f.estimates[i], se[i], ci[i].lower, ci[i].upper
                        )?;
                    }
                }
                _ => {
                    writeln!(out, "{:<10} {:>10}", "parameter", "estimate")?;
                    for (i, name) in f.model.param_names().iter().enumerate() {
                        writeln!(out, "{name:<10} {:>10.4}", f.estimates[i])?;
                    }
                }
            }
            writeln!(out, "-loglik: {:.4}", -f.loglik)?;
            writeln!(out, "objective: {:.4}", f.objective)?;
            writeln!(out, "converged: {}  iterations: {}", f.converged, f.iterations)?;
            for note in &f.notes {
                writeln!(out, "note: {note}")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct RowJson {
    model: String,
    k: usize,
    ks: f64,
    neg2ll: f64,
    aic: f64,
    aicc: f64,
    ranks: Ranks,
}

pub fn compare(
    fits: &[FitResult],
    rows: &[ComparisonRow],
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                n: usize,
                rows: Vec<RowJson>,
                fits: Vec<FitJson<'a>>,
            }
            let doc = Doc {
                command: "compare",
                n: fits.first().map_or(0, |f| f.n),
                rows: rows
                    .iter()
                    .map(|r| RowJson {
                        model: r.model.to_string(),
                        k: r.k,
                        ks: r.ks,
                        neg2ll: r.neg2ll,
                        aic: r.aic,
                        aicc: r.aicc,
                        ranks: r.ranks,
                    })
                    .collect(),
                fits: fits.iter().map(FitJson::from).collect(),
            };
            json_line(&doc, out)
        }
        Format::Csv => {
            writeln!(out, "model,k,ks,neg2ll,aic,aicc,rank_ks,rank_neg2ll,rank_aic,rank_aicc")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.model, r.k, r.ks, r.neg2ll, r.aic, r.aicc, r.ranks.ks, r.ranks.neg2ll,
                    r.ranks.aic, r.ranks.aicc
                )?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "estimates")?;
            for f in fits {
                let parts: Vec<String> = f
                    .model
                    .param_names()
                    .iter()
                    .zip(&f.estimates)
                    .map(|(n, v)| format!("{n}={v:.4}"))
                    .collect();
                writeln!(out, "  {:<8} {}  -loglik={:.4}", f.model, parts.join(" "), -f.loglik)?;
            }
            writeln!(
                out,
                "{:<8} {:>2} {:>8} {:>10} {:>10} {:>10}",
                "model", "k", "K-S", "-2loglik", "AIC", "AICC"
            )?;
            for r in rows {
                writeln!(
                    out,
                    "{:<8} {:>2} {:>8.4} {:>10.4} {:>10.4} {:>10.4}",
                    r.model.to_string(),
                    r.k,
                    r.ks,
                    r.neg2ll,
                    r.aic,
                    r.aicc
                )?;
            }
            Ok(())
        }
    }
}

/// Data points with the empirical cdf and each fitted cdf alongside.
pub fn empirical_with_fits(
    data: &Dataset,
    fits: &[FitResult],
    out: &mut impl Write,
) -> io::Result<()> {
    let params: Vec<TlgParams> = fits
        .iter()
        .map(|f| f.params().expect("fitted parameters are valid"))
        .collect();
    let mut header = String::from("x,ecdf");
    for f in fits {
        header.push_str(&format!(",{}_cdf", f.model));
    }
    writeln!(out, "{header}")?;
    for (x, e) in empirical_cdf(data) {
        write!(out, "{x},{e}")?;
        for p in &params {
            write!(out, ",{}", tlg_cdf(p, x))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn sample(
    params: &TlgParams,
    seed: u64,
    values: &[f64],
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                params: ParamsJson,
                seed: u64,
                n: usize,
                values: &'a [f64],
            }
            json_line(
                &Doc {
                    command: "sample",
                    params: params.into(),
                    seed,
                    n: values.len(),
                    values,
                },
                out,
            )
        }
        Format::Csv => {
            writeln!(out, "x")?;
            for v in values {
                writeln!(out, "{v}")?;
            }
            Ok(())
        }
        Format::Text => {
            for v in values {
                writeln!(out, "{v:.4}")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct MgfJson {
    t: f64,
    value: f64,
}

pub fn moments(
    params: &TlgParams,
    cfg: &SeriesConfig,
    set: &MomentSet,
    mgf: &[(f64, f64)],
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    let named = [
        ("mu1", set.mu1),
        ("mu2", set.mu2),
        ("mu3", set.mu3),
        ("mu4", set.mu4),
        ("variance", set.variance()),
        ("skewness", set.skewness),
        ("kurtosis", set.kurtosis),
    ];
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                command: &'static str,
                params: ParamsJson,
                series: SeriesConfig,
                mu: [f64; 4],
                variance: f64,
                skewness: f64,
                kurtosis: f64,
                mgf: Vec<MgfJson>,
            }
            json_line(
                &Doc {
                    command: "moments",
                    params: params.into(),
                    series: *cfg,
                    mu: [set.mu1, set.mu2, set.mu3, set.mu4],
                    variance: set.variance(),
                    skewness: set.skewness,
                    kurtosis: set.kurtosis,
                    mgf: mgf.iter().map(|&(t, value)| MgfJson { t, value }).collect(),
                },
                out,
            )
        }
        Format::Csv => {
            writeln!(out, "quantity,t,value")?;
            for (name, v) in named {
                writeln!(out, "{name},,{v}")?;
            }
            for (t, v) in mgf {
                writeln!(out, "mgf,{t},{v}")?;
            }
            Ok(())
        }
        Format::Text => {
            for (name, v) in named {
                writeln!(out, "{name:<10} {v:.4}")?;
            }
            for (t, v) in mgf {
                writeln!(out, "{:<10} {v:.4}", format!("M({t})"))?;
            }
            Ok(())
        }
    }
}

pub fn order_stat(
    params: &TlgParams,
    spec: &OrderSpec,
    k: u32,
    moment: f64,
    shape: &MomentSet,
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                params: ParamsJson,
                n: u32,
                r: u32,
                k: u32,
                moment: f64,
                shape: &'a MomentSet,
            }
            json_line(
                &Doc {
                    command: "order-stat",
                    params: params.into(),
                    n: spec.n(),
                    r: spec.r(),
                    k,
                    moment,
                    shape,
                },
                out,
            )
        }
        Format::Csv => {
            writeln!(out, "n,r,k,moment,mean,variance,skewness,kurtosis")?;
            writeln!(
                out,
                "{},{},{k},{moment},{},{},{},{}",
                spec.n(),
                spec.r(),
                shape.mu1,
                shape.variance(),
                shape.skewness,
                shape.kurtosis
            )
        }
        Format::Text => {
            writeln!(out, "order statistic X({}:{})", spec.r(), spec.n())?;
            writeln!(out, "{:<10} {moment:.4}", format!("E[X^{k}]"))?;
            writeln!(out, "{:<10} {:.4}", "mean", shape.mu1)?;
            writeln!(out, "{:<10} {:.4}", "variance", shape.variance())?;
            writeln!(out, "{:<10} {:.4}", "skewness", shape.skewness)?;
            writeln!(out, "{:<10} {:.4}", "kurtosis", shape.kurtosis)
        }
    }
}

pub fn curves(
    params: &TlgParams,
    grid: &Grid,
    table: &CurveTable,
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                params: ParamsJson,
                grid: &'a Grid,
                #[serde(flatten)]
                table: &'a CurveTable,
            }
            json_line(
                &Doc {
                    command: "curves",
                    params: params.into(),
                    grid,
                    table,
                },
                out,
            )
        }
        Format::Csv => table.write_csv(out),
        Format::Text => {
            writeln!(
                out,
                "{:>10} {:>10} {:>10} {:>10} {:>10}",
                "x", "pdf", "cdf", "sf", "hazard"
            )?;
            for i in 0..table.len() {
                writeln!(
                    out,
                    "{:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
                    table.x[i], table.pdf[i], table.cdf[i], table.sf[i], table.hazard[i]
                )?;
            }
            Ok(())
        }
    }
}
