//! Python bindings: `import tlg`.
//!
//! Exposes `TlgParams` with its distribution functions, moments and
//! sampler, plus `fit`, `compare`, order-statistic helpers and the bundled
//! bank waiting-time sample. Library errors surface as `ValueError` for bad
//! input and `RuntimeError` for numerical failures.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tlg_core::estimation::{self, FitResult, Method, Model};
use tlg_core::{data, dist, model_select, moments, order_stats, sampling};
use tlg_core::{Dataset, OptimizerOptions, OrderSpec, RandomSource, SeriesConfig};

fn to_py(e: tlg_core::Error) -> PyErr {
    use tlg_core::Error as E;
    match e {
        E::InvalidParameter(_) | E::Domain(_) | E::Data(_) | E::Parse { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn series(max_j: usize, tol: f64) -> PyResult<SeriesConfig> {
    SeriesConfig::new(max_j, tol).map_err(to_py)
}

fn dataset(values: Option<Vec<f64>>) -> PyResult<Dataset> {
    match values {
        Some(v) => Dataset::new(v).map_err(to_py),
        None => Ok(data::bank_waiting_times()),
    }
}

/// Transmuted Lindley-geometric parameters `(theta, p, lam)`.
#[pyclass(name = "TlgParams", module = "tlg", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
pub struct PyTlgParams {
    inner: dist::TlgParams,
}

#[pymethods]
impl PyTlgParams {
    #[new]
    #[pyo3(signature = (theta, p = 0.0, lam = 0.0))]
    fn new(theta: f64, p: f64, lam: f64) -> PyResult<Self> {
        Ok(Self {
            inner: dist::TlgParams::new(theta, p, lam).map_err(to_py)?,
        })
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta()
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p()
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.inner.lambda()
    }

    fn pdf(&self, x: f64) -> f64 {
        dist::tlg_pdf(&self.inner, x)
    }

    fn cdf(&self, x: f64) -> f64 {
        dist::tlg_cdf(&self.inner, x)
    }

    fn sf(&self, x: f64) -> f64 {
        dist::tlg_sf(&self.inner, x)
    }

    fn hazard(&self, x: f64) -> PyResult<f64> {
        dist::tlg_hazard(&self.inner, x).map_err(to_py)
    }

    fn cumhazard(&self, x: f64) -> PyResult<f64> {
        dist::tlg_cumhazard(&self.inner, x).map_err(to_py)
    }

    fn quantile(&self, u: f64) -> PyResult<f64> {
        dist::tlg_quantile(&self.inner, u).map_err(to_py)
    }

    #[pyo3(signature = (r, max_j = 500, tol = 1e-12))]
    fn raw_moment(&self, r: u32, max_j: usize, tol: f64) -> PyResult<f64> {
        moments::raw_moment(&self.inner, r, &series(max_j, tol)?).map_err(to_py)
    }

    #[pyo3(signature = (t, max_j = 500, tol = 1e-12))]
    fn mgf(&self, t: f64, max_j: usize, tol: f64) -> PyResult<f64> {
        moments::mgf(&self.inner, t, &series(max_j, tol)?).map_err(to_py)
    }

    /// Raw moments 1–4, variance, skewness and kurtosis as a dict.
    #[pyo3(signature = (max_j = 500, tol = 1e-12))]
    fn moments<'py>(&self, py: Python<'py>, max_j: usize, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let set = moments::skewness_kurtosis(&self.inner, &series(max_j, tol)?).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("mu1", set.mu1)?;
        d.set_item("mu2", set.mu2)?;
        d.set_item("mu3", set.mu3)?;
        d.set_item("mu4", set.mu4)?;
        d.set_item("variance", set.variance())?;
        d.set_item("skewness", set.skewness)?;
        d.set_item("kurtosis", set.kurtosis)?;
        Ok(d)
    }

    /// `n` draws from the min/max mixture sampler, reproducible by `seed`.
    #[pyo3(signature = (n, seed = 42))]
    fn sample(&self, n: usize, seed: u64) -> PyResult<Vec<f64>> {
        sampling::sample_tlg(&self.inner, &mut RandomSource::from_seed(seed), n).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "TlgParams(theta={}, p={}, lam={})",
            self.inner.theta(),
            self.inner.p(),
            self.inner.lambda()
        )
    }
}

/// Outcome of one fit.
#[pyclass(name = "FitResult", module = "tlg", frozen, skip_from_py_object)]
pub struct PyFitResult {
    inner: FitResult,
}

#[pymethods]
impl PyFitResult {
    #[getter]
    fn model(&self) -> String {
        self.inner.model.to_string()
    }

    #[getter]
    fn method(&self) -> String {
        self.inner.method.to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn parameters(&self) -> Vec<&'static str> {
        self.inner.model.param_names().to_vec()
    }

    #[getter]
    fn estimates(&self) -> Vec<f64> {
        self.inner.estimates.clone()
    }

    #[getter]
    fn stderr(&self) -> Option<Vec<f64>> {
        self.inner.stderr.clone()
    }

    #[getter]
    fn cov(&self) -> Option<Vec<Vec<f64>>> {
        self.inner.cov.clone()
    }

    #[getter]
    fn ci95(&self) -> Option<Vec<(f64, f64)>> {
        self.inner
            .ci95
            .as_ref()
            .map(|v| v.iter().map(|i| (i.lower, i.upper)).collect())
    }

    #[getter]
    fn loglik(&self) -> f64 {
        self.inner.loglik
    }

    #[getter]
    fn objective(&self) -> f64 {
        self.inner.objective
    }

    #[getter]
    fn converged(&self) -> bool {
        self.inner.converged
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    #[getter]
    fn boundary(&self) -> bool {
        self.inner.boundary
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    /// The estimates as a full `TlgParams`.
    fn params(&self) -> PyResult<PyTlgParams> {
        Ok(PyTlgParams {
            inner: self.inner.params().map_err(to_py)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "FitResult(model='{}', method='{}', estimates={:?}, loglik={})",
            self.inner.model, self.inner.method, self.inner.estimates, self.inner.loglik
        )
    }
}

fn parse<T: std::str::FromStr<Err = tlg_core::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(to_py)
}

/// Fits `model` ("lindley", "lg", "tlg") by `method` ("mle", "lse",
/// "wlse"). `data` defaults to the bundled bank waiting times.
#[pyfunction]
#[pyo3(signature = (data = None, model = "tlg", method = "mle", starts = 8, max_iter = 5000, ftol = 1e-10))]
fn fit(
    py: Python<'_>,
    data: Option<Vec<f64>>,
    model: &str,
    method: &str,
    starts: usize,
    max_iter: usize,
    ftol: f64,
) -> PyResult<PyFitResult> {
    let data = dataset(data)?;
    let model: Model = parse(model)?;
    let method: Method = parse(method)?;
    let opts = OptimizerOptions {
        starts,
        max_iter,
        ftol,
        ..OptimizerOptions::default()
    };
    let inner = py
        .detach(|| estimation::fit(model, method, &data, &opts))
        .map_err(to_py)?;
    Ok(PyFitResult { inner })
}

/// Maximum likelihood fits of `models` with K-S, -2 loglik, AIC and AICC,
/// one dict per model sorted by AIC.
#[pyfunction]
#[pyo3(signature = (data = None, models = vec!["lindley".to_string(), "lg".to_string(), "tlg".to_string()]))]
fn compare<'py>(
    py: Python<'py>,
    data: Option<Vec<f64>>,
    models: Vec<String>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let data = dataset(data)?;
    let models = models
        .iter()
        .map(|m| parse::<Model>(m))
        .collect::<PyResult<Vec<_>>>()?;
    let rows = py
        .detach(|| {
            let fits = models
                .iter()
                .map(|&m| estimation::fit_mle(m, &data, &OptimizerOptions::default()))
                .collect::<tlg_core::Result<Vec<_>>>()?;
            model_select::compare_models(&fits, &data)
        })
        .map_err(to_py)?;
    rows.iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("model", r.model.to_string())?;
            d.set_item("k", r.k)?;
            d.set_item("ks", r.ks)?;
            d.set_item("neg2ll", r.neg2ll)?;
            d.set_item("aic", r.aic)?;
            d.set_item("aicc", r.aicc)?;
            Ok(d)
        })
        .collect()
}

/// `(aic, aicc)` for log-likelihood `loglik` with `k` parameters and `n`
/// observations.
#[pyfunction]
fn aic_aicc(loglik: f64, k: usize, n: usize) -> PyResult<(f64, f64)> {
    model_select::aic_aicc(loglik, k, n).map_err(to_py)
}

/// Density of the `r`-th smallest of `n` draws at `x`.
#[pyfunction]
fn order_stat_pdf(params: &PyTlgParams, n: u32, r: u32, x: f64) -> PyResult<f64> {
    let spec = OrderSpec::new(n, r).map_err(to_py)?;
    Ok(order_stats::order_stat_pdf(&params.inner, &spec, x))
}

/// `E[X_{r:n}^k]`.
#[pyfunction]
#[pyo3(signature = (params, n, r, k = 1))]
fn order_stat_moment(params: &PyTlgParams, n: u32, r: u32, k: u32) -> PyResult<f64> {
    let spec = OrderSpec::new(n, r).map_err(to_py)?;
    order_stats::order_stat_moment(&params.inner, &spec, k).map_err(to_py)
}

/// The bundled 100 bank waiting times, sorted.
#[pyfunction]
fn bank_waiting_times() -> Vec<f64> {
    data::bank_waiting_times().values().to_vec()
}

#[pymodule]
pub fn tlg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTlgParams>()?;
    m.add_class::<PyFitResult>()?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(aic_aicc, m)?)?;
    m.add_function(wrap_pyfunction!(order_stat_pdf, m)?)?;
    m.add_function(wrap_pyfunction!(order_stat_moment, m)?)?;
    m.add_function(wrap_pyfunction!(bank_waiting_times, m)?)?;
    Ok(())
}
