//! Maximum-likelihood and (weighted) least-squares fitting of the Lindley,
//! LG and TLG models, with observed-information standard errors and
//! Wald confidence intervals.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::data::Dataset;
use crate::dist::{self, TlgParams};
use crate::error::{Error, Result};
use crate::optim::{self, OptimizerOptions};

/// Distance from a parameter bound at which an estimate is flagged.
pub const BOUNDARY_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Lindley,
    Lg,
    Tlg,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Lindley, Model::Lg, Model::Tlg];

    pub fn n_params(self) -> usize {
        match self {
            Model::Lindley => 1,
            Model::Lg => 2,
            Model::Tlg => 3,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        &["theta", "p", "lambda"][..self.n_params()]
    }

    pub fn label(self) -> &'static str {
        match self {
            Model::Lindley => "Lindley",
            Model::Lg => "Lindley geometric",
            Model::Tlg => "Transmuted Lindley geometric",
        }
    }

    /// Embeds a model-sized parameter vector in the TLG space.
    pub fn params(self, estimates: &[f64]) -> Result<TlgParams> {
        if estimates.len() != self.n_params() {
            return Err(Error::InvalidParameter(format!(
                "{self} expects {} parameters, got {}",
                self.n_params(),
                estimates.len()
            )));
        }
        let theta = estimates[0];
        let p = estimates.get(1).copied().unwrap_or(0.0);
        let lambda = estimates.get(2).copied().unwrap_or(0.0);
        TlgParams::new(theta, p, lambda)
    }

    fn bounds(self) -> &'static [(f64, f64)] {
        &[(0.0, f64::INFINITY), (-1.0, 1.0), (-1.0, 1.0)][..self.n_params()]
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Lindley => "lindley",
            Model::Lg => "lg",
            Model::Tlg => "tlg",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lindley" => Ok(Model::Lindley),
            "lg" => Ok(Model::Lg),
            "tlg" => Ok(Model::Tlg),
            other => Err(Error::InvalidParameter(format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mle,
    Lse,
    Wlse,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Mle => "mle",
            Method::Lse => "lse",
            Method::Wlse => "wlse",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mle" => Ok(Method::Mle),
            "lse" => Ok(Method::Lse),
            "wlse" => Ok(Method::Wlse),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

/// Outcome of fitting one model by one method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub model: Model,
    pub method: Method,
    pub n: usize,
    pub estimates: Vec<f64>,
    /// Standard errors from the inverse observed information (MLE only).
    pub stderr: Option<Vec<f64>>,
    pub cov: Option<Vec<Vec<f64>>>,
    /// Log-likelihood at the estimates, whatever the method.
    pub loglik: f64,
    /// Final value of the minimized objective.
    pub objective: f64,
    pub converged: bool,
    pub iterations: usize,
    pub boundary: bool,
    pub ci95: Option<Vec<Interval>>,
    pub notes: Vec<String>,
}

impl FitResult {
    pub fn params(&self) -> Result<TlgParams> {
        self.model.params(&self.estimates)
    }

    pub fn k(&self) -> usize {
        self.model.n_params()
    }
}

/// `ℓ(θ, p, λ)` summed over the sample; `−∞` when any log argument is
/// non-positive.
pub fn loglik_tlg(params: &TlgParams, data: &Dataset) -> f64 {
    let (t, p, l) = (params.theta(), params.p(), params.lambda());
    let n = data.n() as f64;
    let a = t / (t + 1.0);
    let mut total = 2.0 * n * t.ln() - n * (1.0 + t).ln() + n * (1.0 - p).ln();
    for &x in data.values() {
        let e = (-t * x).exp();
        let z = (1.0 + a * x) * e;
        let denom = 1.0 - p * z;
        let g = (1.0 - z) / denom;
        let factor = (1.0 + l) - 2.0 * l * g;
        if !(denom > 0.0 && factor > 0.0) {
            return f64::NEG_INFINITY;
        }
        total += (1.0 + x).ln() - t * x - 2.0 * denom.ln() + factor.ln();
    }
    if total.is_nan() {
        f64::NEG_INFINITY
    } else {
        total
    }
}

/// Log-likelihood of a model-sized parameter vector; `−∞` when the vector
/// is outside the parameter space.
pub fn loglik(model: Model, estimates: &[f64], data: &Dataset) -> f64 {
    match model.params(estimates) {
        Ok(params) => loglik_tlg(&params, data),
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Analytic score `(∂ℓ/∂θ, ∂ℓ/∂p, ∂ℓ/∂λ)`.
pub fn score_tlg(params: &TlgParams, data: &Dataset) -> [f64; 3] {
    let (t, p, l) = (params.theta(), params.p(), params.lambda());
    let n = data.n() as f64;
    let a = t / (t + 1.0);
    let inv_sq = 1.0 / ((1.0 + t) * (1.0 + t));

    let mut d_theta = 2.0 * n / t - n / (1.0 + t);
    let mut d_p = -n / (1.0 - p);
    let mut d_lambda = 0.0;
    for &x in data.values() {
        let e = (-t * x).exp();
        let z = (1.0 + a * x) * e;
        let denom = 1.0 - p * z;
        let g = (1.0 - z) / denom;
        let factor = (1.0 + l) - 2.0 * l * g;
        // −∂z/∂θ
        let dz = x * e * ((1.0 + a * x) - inv_sq);

        d_theta += -x
            - 2.0 * p * dz / denom
            - 2.0 * l * (1.0 - p) * dz / (denom * denom * factor);
        d_p += 2.0 * z / denom - 2.0 * l * (1.0 - z) * z / (denom * denom * factor);
        d_lambda += (1.0 - 2.0 * g) / factor;
    }
    [d_theta, d_p, d_lambda]
}

/// Plotting-position objective `Σ w_j (F(x_(j)) − j/(n+1))²`.
fn least_squares_objective(params: &TlgParams, data: &Dataset, weighted: bool) -> f64 {
    let n = data.n() as f64;
    data.values()
        .iter()
        .enumerate()
        .map(|(idx, &x)| {
            let j = idx as f64 + 1.0;
            let resid = dist::tlg_cdf(params, x) - j / (n + 1.0);
            let w = if weighted { wlse_weight(idx + 1, data.n()) } else { 1.0 };
            w * resid * resid
        })
        .sum()
}

/// `w_j = (n+1)²(n+2) / (j(n − j + 1))`, the inverse variance of
/// `F(X_(j))`.
pub fn wlse_weight(j: usize, n: usize) -> f64 {
    let (j, n) = (j as f64, n as f64);
    (n + 1.0) * (n + 1.0) * (n + 2.0) / (j * (n - j + 1.0))
}

/// Objective minimized by `method` at a model-sized parameter vector.
pub fn objective(model: Model, method: Method, estimates: &[f64], data: &Dataset) -> f64 {
    let Ok(params) = model.params(estimates) else {
        return f64::INFINITY;
    };
    let v = match method {
        Method::Mle => -loglik_tlg(&params, data),
        Method::Lse => least_squares_objective(&params, data, false),
        Method::Wlse => least_squares_objective(&params, data, true),
    };
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Deterministic starting points: a Halton sequence (bases 2, 3, 5) over
/// θ ∈ [0.01, 5] (log scale), p ∈ [−0.9, 0.95], λ ∈ [−0.99, 0.99].
pub fn starting_points(model: Model, count: usize) -> Vec<Vec<f64>> {
    fn halton(mut index: usize, base: usize) -> f64 {
        let mut f = 1.0;
        let mut r = 0.0;
        while index > 0 {
            f /= base as f64;
            r += f * (index % base) as f64;
            index /= base;
        }
        r
    }
    (1..=count)
        .map(|i| {
            let h = [halton(i, 2), halton(i, 3), halton(i, 5)];
            let full = [
                0.01 * (500f64).powf(h[0]),
                -0.9 + 1.85 * h[1],
                -0.99 + 1.98 * h[2],
            ];
            full[..model.n_params()].to_vec()
        })
        .collect()
}

fn initial_step(start: &[f64]) -> Vec<f64> {
    start
        .iter()
        .enumerate()
        .map(|(i, &v)| if i == 0 { 0.2 * v } else { 0.15 })
        .collect()
}

fn on_boundary(model: Model, estimates: &[f64]) -> bool {
    model
        .bounds()
        .iter()
        .zip(estimates)
        .any(|(&(lo, hi), &v)| v - lo < BOUNDARY_EPS || hi - v < BOUNDARY_EPS)
}

/// Fits `model` to `data` by `method`.
///
/// Every starting point from [`starting_points`] is refined by Nelder–Mead;
/// the lowest final objective wins, ties going to the earlier start.
pub fn fit(model: Model, method: Method, data: &Dataset, opts: &OptimizerOptions) -> Result<FitResult> {
    let k = model.n_params();
    if data.n() < k {
        return Err(Error::Data(format!(
            "{model} needs at least {k} observations, got {}",
            data.n()
        )));
    }
    if opts.starts == 0 {
        return Err(Error::InvalidParameter("at least one start is required".into()));
    }
    let f = |v: &[f64]| objective(model, method, v, data);

    let mut best: Option<optim::Minimum> = None;
    let mut iterations = 0;
    for start in starting_points(model, opts.starts) {
        let m = optim::nelder_mead(f, &start, &initial_step(&start), opts);
        iterations += m.iterations;
        if !m.value.is_finite() {
            continue;
        }
        if best.as_ref().is_none_or(|b| m.value < b.value) {
            best = Some(m);
        }
    }
    let best = best.ok_or_else(|| {
        Error::Optimization(format!("all {} starts failed for {model}/{method}", opts.starts))
    })?;

    let estimates = best.x;
    let boundary = on_boundary(model, &estimates);
    let mut result = FitResult {
        model,
        method,
        n: data.n(),
        loglik: loglik(model, &estimates, data),
        objective: best.value,
        converged: best.converged,
        iterations,
        boundary,
        estimates,
        stderr: None,
        cov: None,
        ci95: None,
        notes: Vec::new(),
    };
    if boundary {
        result
            .notes
            .push("estimate lies within 1e-6 of a parameter bound".into());
    }
    if method == Method::Mle {
        match observed_information(model, &result.estimates, data).and_then(|i| covariance(&i)) {
            Ok(cov) => {
                result.stderr = Some((0..k).map(|i| cov[(i, i)].sqrt()).collect());
                result.cov = Some(
                    (0..k)
                        .map(|i| (0..k).map(|j| cov[(i, j)]).collect())
                        .collect(),
                );
                result.ci95 = Some(confidence_intervals(&result, 0.95)?);
            }
            Err(e) => result.notes.push(format!("no standard errors: {e}")),
        }
    }
    Ok(result)
}

pub fn fit_mle(model: Model, data: &Dataset, opts: &OptimizerOptions) -> Result<FitResult> {
    fit(model, Method::Mle, data, opts)
}

pub fn fit_lse(model: Model, data: &Dataset, opts: &OptimizerOptions) -> Result<FitResult> {
    fit(model, Method::Lse, data, opts)
}

pub fn fit_wlse(model: Model, data: &Dataset, opts: &OptimizerOptions) -> Result<FitResult> {
    fit(model, Method::Wlse, data, opts)
}

fn hessian_at(f: &impl Fn(&[f64]) -> f64, x: &[f64], h: &[f64]) -> Result<DMatrix<f64>> {
    let k = x.len();
    let eval = |offsets: &[(usize, f64)]| -> Result<f64> {
        let mut v = x.to_vec();
        for &(i, d) in offsets {
            v[i] += d;
        }
        let fv = f(&v);
        if fv.is_finite() {
            Ok(fv)
        } else {
            Err(Error::Domain(format!(
                "log-likelihood is not finite at {v:?} while differentiating"
            )))
        }
    };
    let f0 = eval(&[])?;
    let mut hess = DMatrix::zeros(k, k);
    for i in 0..k {
        let plus = eval(&[(i, h[i])])?;
        let minus = eval(&[(i, -h[i])])?;
        hess[(i, i)] = (plus - 2.0 * f0 + minus) / (h[i] * h[i]);
        for j in 0..i {
            let pp = eval(&[(i, h[i]), (j, h[j])])?;
            let pm = eval(&[(i, h[i]), (j, -h[j])])?;
            let mp = eval(&[(i, -h[i]), (j, h[j])])?;
            let mm = eval(&[(i, -h[i]), (j, -h[j])])?;
            let v = (pp - pm - mp + mm) / (4.0 * h[i] * h[j]);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    Ok(hess)
}

/// Negative Hessian of the log-likelihood at `estimates`, by central second
/// differences with step `max(1e-4, 1e-4·|x_i|)` and one Richardson
/// refinement.
pub fn observed_information(model: Model, estimates: &[f64], data: &Dataset) -> Result<DMatrix<f64>> {
    model.params(estimates)?;
    let f = |v: &[f64]| loglik(model, v, data);
    let h: Vec<f64> = estimates.iter().map(|v| (1e-4 * v.abs()).max(1e-4)).collect();
    let half: Vec<f64> = h.iter().map(|s| 0.5 * s).collect();
    let coarse = hessian_at(&f, estimates, &h)?;
    let fine = hessian_at(&f, estimates, &half)?;
    let refined = (fine * 4.0 - coarse) / 3.0;
    let sym = (&refined + refined.transpose()) * 0.5;
    Ok(-sym)
}

/// Inverse of a positive definite information matrix.
pub fn covariance(information: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    match information.clone().cholesky() {
        Some(chol) => Ok(chol.inverse()),
        None => {
            let eig = SymmetricEigen::new(information.clone());
            let min = eig.eigenvalues.min();
            let max = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            Err(Error::SingularInformation {
                min_eigenvalue: min,
                condition: if min.abs() > 0.0 { max / min.abs() } else { f64::INFINITY },
            })
        }
    }
}

/// Two-sided Wald intervals `estimate ± z·se`, clipped to the parameter
/// space (θ ≥ 0, p and λ in [−1, 1]).
pub fn confidence_intervals(fit: &FitResult, level: f64) -> Result<Vec<Interval>> {
    if !(0.0..1.0).contains(&level) {
        return Err(Error::InvalidParameter(format!(
            "confidence level must lie in [0, 1), got {level}"
        )));
    }
    let cov = fit.cov.as_ref().ok_or_else(|| {
        Error::InvalidParameter(format!("{} fit has no covariance matrix", fit.method))
    })?;
    let z = if level == 0.0 {
        0.0
    } else {
        Normal::standard().inverse_cdf(0.5 + 0.5 * level)
    };
    Ok(fit
        .model
        .bounds()
        .iter()
        .enumerate()
        .map(|(i, &(lo, hi))| {
            let half_width = z * cov[i][i].sqrt();
            let est = fit.estimates[i];
            Interval {
                lower: (est - half_width).max(lo),
                upper: (est + half_width).min(hi),
            }
        })
        .collect())
}
