//! Lindley, Lindley-geometric (LG) and transmuted Lindley-geometric (TLG)
//! distribution functions.
//!
//! All three families share the kernel `z(x) = (1 + θx/(θ+1))·e^{−θx}`,
//! which is the Lindley survival function. The LG cdf is
//! `G = (1 − z)/(1 − p·z)` and the TLG cdf is `G·(1 + λ − λG)`.
//! Survival-side quantities are evaluated from `z` directly so the right
//! tail keeps full relative precision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const VALIDATION_POINTS: usize = 512;

/// Parameter of the one-parameter Lindley distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LindleyParams {
    theta: f64,
}

impl LindleyParams {
    pub fn new(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Parameters `(θ, p)` of the Lindley-geometric distribution.
///
/// `p` is accepted on the open interval (−1, 1). Negative values are
/// outside the geometric-compounding interpretation but still define a
/// proper density, and the bank waiting-time fit lands there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LgParams {
    theta: f64,
    p: f64,
}

impl LgParams {
    pub fn new(theta: f64, p: f64) -> Result<Self> {
        check_theta(theta)?;
        check_p(p)?;
        let params = Self { theta, p };
        check_density(theta, |x| lg_pdf(&params, x))?;
        Ok(params)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lindley(&self) -> LindleyParams {
        LindleyParams { theta: self.theta }
    }
}

/// Parameters `(θ, p, λ)` of the transmuted Lindley-geometric distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TlgParams {
    theta: f64,
    p: f64,
    lambda: f64,
}

impl TlgParams {
    pub fn new(theta: f64, p: f64, lambda: f64) -> Result<Self> {
        check_theta(theta)?;
        check_p(p)?;
        check_lambda(lambda)?;
        let params = Self { theta, p, lambda };
        check_density(theta, |x| tlg_pdf(&params, x))?;
        Ok(params)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The untransmuted LG base.
    pub fn lg(&self) -> LgParams {
        LgParams {
            theta: self.theta,
            p: self.p,
        }
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.theta, self.p, self.lambda]
    }
}

impl From<LindleyParams> for LgParams {
    fn from(l: LindleyParams) -> Self {
        LgParams {
            theta: l.theta,
            p: 0.0,
        }
    }
}

impl From<LgParams> for TlgParams {
    fn from(lg: LgParams) -> Self {
        TlgParams {
            theta: lg.theta,
            p: lg.p,
            lambda: 0.0,
        }
    }
}

impl From<LindleyParams> for TlgParams {
    fn from(l: LindleyParams) -> Self {
        LgParams::from(l).into()
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "theta must be finite and > 0, got {theta}"
        )))
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > -1.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "p must lie in (-1, 1), got {p}"
        )))
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "lambda must lie in [-1, 1], got {lambda}"
        )))
    }
}

/// Rejects a parameter set whose density is negative or non-finite anywhere
/// on a log-spaced grid spanning `[1e-4, 1e4]/θ`, or at the origin.
fn check_density(theta: f64, pdf: impl Fn(f64) -> f64) -> Result<()> {
    let bad = |x: f64| {
        let v = pdf(x);
        !(v.is_finite() && v >= 0.0)
    };
    if bad(0.0) {
        return Err(Error::InvalidParameter(
            "density is negative or non-finite at x = 0".into(),
        ));
    }
    for k in 0..VALIDATION_POINTS {
        let exponent = -4.0 + 8.0 * k as f64 / (VALIDATION_POINTS - 1) as f64;
        let x = 10f64.powf(exponent) / theta;
        if bad(x) {
            return Err(Error::InvalidParameter(format!(
                "density is negative or non-finite at x = {x}"
            )));
        }
    }
    Ok(())
}

/// Shared pieces of the LG cdf at one point.
#[derive(Debug, Clone, Copy)]
struct LgKernel {
    /// `1 − p·z`
    denom: f64,
    /// LG cdf.
    cdf: f64,
    /// LG survival, `(1 − p)·z/(1 − p·z)`.
    sf: f64,
}

impl LgKernel {
    fn new(theta: f64, p: f64, x: f64) -> Self {
        if x <= 0.0 {
            return Self {
                denom: 1.0 - p,
                cdf: 0.0,
                sf: 1.0,
            };
        }
        let a = theta / (theta + 1.0);
        let e = (-theta * x).exp();
        let z = (1.0 + a * x) * e;
        // 1 − z without cancellation near the origin
        let one_minus_z = -(-theta * x).exp_m1() - a * x * e;
        let denom = 1.0 - p * z;
        Self {
            denom,
            cdf: one_minus_z / denom,
            sf: (1.0 - p) * z / denom,
        }
    }
}

pub fn lindley_pdf(params: &LindleyParams, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let t = params.theta;
    t * t / (t + 1.0) * (1.0 + x) * (-t * x).exp()
}

pub fn lindley_cdf(params: &LindleyParams, x: f64) -> f64 {
    LgKernel::new(params.theta, 0.0, x).cdf
}

pub fn lg_cdf(params: &LgParams, x: f64) -> f64 {
    LgKernel::new(params.theta, params.p, x).cdf
}

pub fn lg_sf(params: &LgParams, x: f64) -> f64 {
    LgKernel::new(params.theta, params.p, x).sf
}

pub fn lg_pdf(params: &LgParams, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let k = LgKernel::new(params.theta, params.p, x);
    lg_pdf_with(params.theta, params.p, x, &k)
}

fn lg_pdf_with(theta: f64, p: f64, x: f64, k: &LgKernel) -> f64 {
    theta * theta / (theta + 1.0) * (1.0 - p) * (1.0 + x) * (-theta * x).exp()
        / (k.denom * k.denom)
}

/// `(1 + λ) − 2λG`, written as `(1 − λ) + 2λ(1 − G)` so it stays accurate
/// when `G` is close to one.
fn transmute_density_factor(lambda: f64, k: &LgKernel) -> f64 {
    (1.0 - lambda) + 2.0 * lambda * k.sf
}

/// `1 − λG = (1 − λ) + λ(1 − G)`.
fn transmute_survival_factor(lambda: f64, k: &LgKernel) -> f64 {
    (1.0 - lambda) + lambda * k.sf
}

pub fn tlg_cdf(params: &TlgParams, x: f64) -> f64 {
    let g = LgKernel::new(params.theta, params.p, x).cdf;
    g * (1.0 + params.lambda - params.lambda * g)
}

pub fn tlg_pdf(params: &TlgParams, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let k = LgKernel::new(params.theta, params.p, x);
    lg_pdf_with(params.theta, params.p, x, &k) * transmute_density_factor(params.lambda, &k)
}

/// Survival function `1 − F`. Past `F > 0.999` the factored form
/// `(1 − G)(1 − λG)` is used instead of the complement.
pub fn tlg_sf(params: &TlgParams, x: f64) -> f64 {
    let k = LgKernel::new(params.theta, params.p, x);
    let g = k.cdf;
    let cdf = g * (1.0 + params.lambda - params.lambda * g);
    if cdf > 0.999 {
        k.sf * transmute_survival_factor(params.lambda, &k)
    } else {
        1.0 - cdf
    }
}

fn check_finite_x(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "x = {x} is outside the supported range"
        )))
    }
}

/// Hazard rate `f/(1 − F)`.
///
/// The ratio is simplified analytically so that neither the density nor the
/// survival function has to be formed; it stays finite for any finite `x`.
pub fn tlg_hazard(params: &TlgParams, x: f64) -> Result<f64> {
    check_finite_x(x)?;
    if x < 0.0 {
        return Ok(0.0);
    }
    let (t, p, l) = (params.theta, params.p, params.lambda);
    let k = LgKernel::new(t, p, x);
    let base = t * t / (t + 1.0) * (1.0 + x) / (1.0 + t * x / (t + 1.0)) / k.denom;
    let ratio = if l == 1.0 {
        2.0
    } else {
        transmute_density_factor(l, &k) / transmute_survival_factor(l, &k)
    };
    Ok(base * ratio)
}

/// Cumulative hazard `−ln(1 − F)`, evaluated in log space.
pub fn tlg_cumhazard(params: &TlgParams, x: f64) -> Result<f64> {
    check_finite_x(x)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let (t, p, l) = (params.theta, params.p, params.lambda);
    let a = t / (t + 1.0);
    let z = (1.0 + a * x) * (-t * x).exp();
    let ln_sf_lg = (1.0 - p).ln() + (a * x).ln_1p() - t * x - (-p * z).ln_1p();
    let mix = (1.0 - l) + l * ln_sf_lg.exp();
    let ln_mix = if mix > f64::MIN_POSITIVE {
        mix.ln()
    } else {
        // only reachable with λ = 1 once the LG survival underflows
        l.ln() + ln_sf_lg
    };
    Ok((-(ln_sf_lg + ln_mix)).max(0.0))
}

/// Quantile function by bracketed root finding on [`tlg_cdf`].
pub fn tlg_quantile(params: &TlgParams, u: f64) -> Result<f64> {
    invert_cdf(|x| tlg_cdf(params, x), u)
}

pub fn lg_quantile(params: &LgParams, u: f64) -> Result<f64> {
    invert_cdf(|x| lg_cdf(params, x), u)
}

const QUANTILE_TOL: f64 = 1e-12;
const QUANTILE_MAX_ITER: usize = 200;

/// Solves `cdf(x) = u` for a continuous nondecreasing cdf supported on
/// `[0, ∞)`.
///
/// The upper end of the bracket doubles from 1 until `cdf(hi) > u`. Inside
/// the bracket, false-position steps with the Illinois modification are
/// used, falling back to bisection whenever a step leaves the bracket or two
/// consecutive steps fail to halve it.
pub(crate) fn invert_cdf(cdf: impl Fn(f64) -> f64, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "quantile level must lie in (0, 1), got {u}"
        )));
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut f_hi = cdf(hi) - u;
    let mut doublings = 0;
    while f_hi <= 0.0 {
        if f_hi == 0.0 {
            return Ok(hi);
        }
        lo = hi;
        hi *= 2.0;
        f_hi = cdf(hi) - u;
        doublings += 1;
        if doublings > 1100 {
            return Err(Error::RootNotConverged {
                iterations: doublings,
                lo,
                hi,
                residual: f_hi,
            });
        }
    }
    let mut f_lo = cdf(lo) - u;
    if f_lo.abs() <= QUANTILE_TOL {
        return Ok(lo);
    }

    let mut last_side = 0i8;
    let mut width_two_steps_ago = hi - lo;
    let mut width_one_step_ago = hi - lo;
    for iter in 0..QUANTILE_MAX_ITER {
        let width = hi - lo;
        let force_bisect = iter >= 2 && width > 0.5 * width_two_steps_ago;
        let mut x = if force_bisect {
            0.5 * (lo + hi)
        } else {
            (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = cdf(x) - u;
        if fx.abs() <= QUANTILE_TOL || width <= 4.0 * f64::EPSILON * hi {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
            f_lo = fx;
            if last_side == -1 {
                f_hi *= 0.5;
            }
            last_side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if last_side == 1 {
                f_lo *= 0.5;
            }
            last_side = 1;
        }
        width_two_steps_ago = width_one_step_ago;
        width_one_step_ago = hi - lo;
    }
    let mid = 0.5 * (lo + hi);
    Err(Error::RootNotConverged {
        iterations: QUANTILE_MAX_ITER,
        lo,
        hi,
        residual: cdf(mid) - u,
    })
}
