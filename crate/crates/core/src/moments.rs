//! Series expressions for the raw moments and moment generating function
//! of the TLG distribution, plus skewness and kurtosis.
//!
//! Expanding `[1 − p·z]^{−k}` as a power series in `p·z` and
//! `(1 + θx/(θ+1))^j` binomially turns every moment integral into a double
//! sum of gamma integrals. With `a = θ/(θ+1)` and
//! `Γ_s(m) = Γ(m+1)/s^{m+1}·[1 + (m+1)/s]` (the value of
//! `∫ (x^m + x^{m+1}) e^{−sx} dx`), the block for outer index `j` is
//!
//! ```text
//!   cA·(j+1)·p^j       Σ_i C(j,i) a^i Γ_{s1}(r+i)
//! − cB·(j+1)(j+2)·p^j  Σ_i C(j,i) a^i [Γ_{s1}(r+i) − Γ_{s2}(r+i) − a·Γ_{s2}(r+i+1)]
//! ```
//!
//! with `cA = θ²(1+λ)(1−p)/(θ+1)`, `cB = λθ²(1−p)/(θ+1)`, `s1 = θ(j+1)`,
//! `s2 = θ(j+2)`. The generating function uses the same blocks with `r = 0`
//! and both rates shifted down by `t`.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::dist::TlgParams;
use crate::error::{Error, Result};

/// Truncation controls for the outer series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    pub max_j: usize,
    pub tol: f64,
}

impl SeriesConfig {
    pub fn new(max_j: usize, tol: f64) -> Result<Self> {
        if max_j < 1 {
            return Err(Error::InvalidParameter("max_j must be at least 1".into()));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!("tol must be > 0, got {tol}")));
        }
        Ok(Self { max_j, tol })
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            max_j: 500,
            tol: 1e-12,
        }
    }
}

/// First four raw moments with the derived shape measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub mu4: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

impl MomentSet {
    /// Skewness and kurtosis from raw moments.
    pub fn from_raw(mu: [f64; 4]) -> Result<Self> {
        let [m1, m2, m3, m4] = mu;
        let var = m2 - m1 * m1;
        if var.is_nan() || var <= 1e-12 * m2.abs() {
            return Err(Error::DegenerateVariance(var));
        }
        let skewness = (m3 - 3.0 * m1 * m2 + 2.0 * m1.powi(3)) / var.powf(1.5);
        let kurtosis =
            (m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1.powi(4)) / (var * var);
        Ok(Self {
            mu1: m1,
            mu2: m2,
            mu3: m3,
            mu4: m4,
            skewness,
            kurtosis,
        })
    }

    pub fn variance(&self) -> f64 {
        self.mu2 - self.mu1 * self.mu1
    }
}

/// `ln k!` for `k = 0..len`.
fn ln_factorials(len: usize) -> Vec<f64> {
    (0..len).map(|k| ln_gamma(k as f64 + 1.0)).collect()
}

/// `Γ(m+1)/s^{m+1}·[1 + (m+1)/s]` scaled by `exp(ln_weight)`.
fn gamma_pair(ln_fact_m: f64, m: usize, s: f64, ln_s: f64, ln_weight: f64) -> f64 {
    let k = (m + 1) as f64;
    (ln_weight + ln_fact_m - k * ln_s).exp() * (1.0 + k / s)
}

/// Sums the double series for `∫ x^r e^{tx} f(x) dx`.
fn tlg_series(params: &TlgParams, r: usize, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    let (theta, p, lambda) = (params.theta(), params.p(), params.lambda());
    let a = theta / (theta + 1.0);
    let ln_a = a.ln();
    let c_a = theta * theta * (1.0 + lambda) / (theta + 1.0) * (1.0 - p);
    let c_b = lambda * theta * theta / (theta + 1.0) * (1.0 - p);
    let ln_fact = ln_factorials(cfg.max_j + r + 3);
    let shrink = 1.0 - p.abs();

    let mut sum = 0.0;
    let mut last_block = f64::INFINITY;
    for j in 0..cfg.max_j {
        let s1 = theta * (j as f64 + 1.0) - t;
        let s2 = theta * (j as f64 + 2.0) - t;
        let (ln_s1, ln_s2) = (s1.ln(), s2.ln());
        let mut inner_a = 0.0;
        let mut inner_b = 0.0;
        for i in 0..=j {
            let ln_w = ln_fact[j] - ln_fact[i] - ln_fact[j - i] + i as f64 * ln_a;
            let m = r + i;
            let g1 = gamma_pair(ln_fact[m], m, s1, ln_s1, ln_w);
            let g2 = gamma_pair(ln_fact[m], m, s2, ln_s2, ln_w);
            let g3 = gamma_pair(ln_fact[m + 1], m + 1, s2, ln_s2, ln_w);
            inner_a += g1;
            inner_b += g1 - g2 - a * g3;
        }
        let jf = j as f64;
        let pj = p.powi(j as i32);
        let block_a = c_a * (jf + 1.0) * pj * inner_a;
        let block_b = c_b * (jf + 1.0) * (jf + 2.0) * pj * inner_b;
        sum += block_a - block_b;
        last_block = block_a.abs().max(block_b.abs());
        // geometric tail bound: remaining blocks sum to about last/(1 − |p|)
        if j >= 1 && last_block <= cfg.tol * sum.abs().max(1.0) * shrink {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged {
        value: sum,
        max_j: cfg.max_j,
        last_block,
    })
}

/// `E[X^r]` from the double series.
pub fn raw_moment(params: &TlgParams, r: u32, cfg: &SeriesConfig) -> Result<f64> {
    if r < 1 {
        return Err(Error::InvalidParameter("moment order must be at least 1".into()));
    }
    tlg_series(params, r as usize, 0.0, cfg)
}

/// `E[e^{tX}]` for `t < θ`.
pub fn mgf(params: &TlgParams, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    if t.is_nan() || t >= params.theta() {
        return Err(Error::Domain(format!(
            "mgf requires t < theta = {}, got t = {t}",
            params.theta()
        )));
    }
    tlg_series(params, 0, t, cfg)
}

/// Raw moments 1 through 4 with skewness and kurtosis.
pub fn skewness_kurtosis(params: &TlgParams, cfg: &SeriesConfig) -> Result<MomentSet> {
    let mut mu = [0.0; 4];
    for (k, m) in mu.iter_mut().enumerate() {
        *m = raw_moment(params, k as u32 + 1, cfg)?;
    }
    MomentSet::from_raw(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lindley_mean_closed_form() {
        let params = TlgParams::new(1.0, 0.0, 0.0).unwrap();
        let m = raw_moment(&params, 1, &SeriesConfig::default()).unwrap();
        assert!((m - 1.5).abs() < 1e-13);
    }

    #[test]
    fn mgf_at_zero_is_one() {
        for &(t, p, l) in &[(0.2, 0.8, -0.9), (1.0, 0.3, 0.5), (3.0, -0.2, 0.9)] {
            let params = TlgParams::new(t, p, l).unwrap();
            let m = mgf(&params, 0.0, &SeriesConfig::default()).unwrap();
            assert!((m - 1.0).abs() < 1e-12, "{m}");
        }
    }

    #[test]
    fn mgf_domain() {
        let params = TlgParams::new(0.5, 0.3, 0.1).unwrap();
        assert!(matches!(
            mgf(&params, 0.5, &SeriesConfig::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zero_order_rejected() {
        let params = TlgParams::new(0.5, 0.3, 0.1).unwrap();
        assert!(raw_moment(&params, 0, &SeriesConfig::default()).is_err());
    }

    #[test]
    fn truncation_flagged() {
        let params = TlgParams::new(0.5, 0.9, 0.1).unwrap();
        let cfg = SeriesConfig::new(3, 1e-12).unwrap();
        assert!(matches!(
            raw_moment(&params, 1, &cfg),
            Err(Error::SeriesNotConverged { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(SeriesConfig::new(0, 1e-12).is_err());
        assert!(SeriesConfig::new(10, 0.0).is_err());
    }

    #[test]
    fn symmetric_moments_have_zero_skewness() {
        // standard normal raw moments
        let s = MomentSet::from_raw([0.0, 1.0, 0.0, 3.0]).unwrap();
        assert_eq!(s.skewness, 0.0);
        assert!((s.kurtosis - 3.0).abs() < 1e-15);
        assert!(MomentSet::from_raw([1.0, 1.0, 1.0, 1.0]).is_err());
    }
}
