//! Test-only oracles, independent of the library's evaluation and
//! integration code paths.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// TLG density written out term by term, straight from its definition.
pub fn oracle_pdf(theta: f64, p: f64, lambda: f64, x: f64) -> f64 {
    let lindley_sf = (1.0 + theta * x / (theta + 1.0)) * (-theta * x).exp();
    let lg_cdf = (1.0 - lindley_sf) / (1.0 - p * lindley_sf);
    let lg_pdf = theta.powi(2) / (theta + 1.0) * (1.0 - p) * (1.0 + x) * (-theta * x).exp()
        / (1.0 - p * lindley_sf).powi(2);
    lg_pdf * ((1.0 + lambda) - 2.0 * lambda * lg_cdf)
}

pub fn oracle_cdf(theta: f64, p: f64, lambda: f64, x: f64) -> f64 {
    let lindley_sf = (1.0 + theta * x / (theta + 1.0)) * (-theta * x).exp();
    let g = (1.0 - lindley_sf) / (1.0 - p * lindley_sf);
    (1.0 + lambda) * g - lambda * g * g
}

/// Double-exponential (exp-sinh) quadrature of `f` over `[0, ∞)`, with
/// `x = scale·exp(π/2·sinh t)`. Halves the step until two levels agree.
pub fn exp_sinh(f: impl Fn(f64) -> f64, scale: f64) -> f64 {
    let term = |t: f64| {
        let s = FRAC_PI_2 * t.sinh();
        let x = scale * s.exp();
        let w = scale * FRAC_PI_2 * t.cosh() * s.exp();
        let v = f(x) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let t_max: f64 = 4.5;
    let mut h: f64 = 0.5;
    let mut prev = f64::NAN;
    for _ in 0..12 {
        let n = (t_max / h).ceil() as i64;
        let sum: f64 = (-n..=n).map(|k| term(k as f64 * h)).sum::<f64>() * h;
        if (sum - prev).abs() <= 1e-14 * sum.abs().max(1e-300) {
            return sum;
        }
        prev = sum;
        h *= 0.5;
    }
    prev
}

/// Double-exponential (tanh-sinh) quadrature of `f` over `[a, b]`.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let term = |t: f64| {
        let s = FRAC_PI_2 * t.sinh();
        let u = s.tanh();
        let w = FRAC_PI_2 * t.cosh() / s.cosh().powi(2);
        let v = f(c + r * u) * w * r;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let t_max: f64 = 3.5;
    let mut h: f64 = 0.5;
    let mut prev = f64::NAN;
    for _ in 0..12 {
        let n = (t_max / h).ceil() as i64;
        let sum: f64 = (-n..=n).map(|k| term(k as f64 * h)).sum::<f64>() * h;
        if (sum - prev).abs() <= 1e-14 * sum.abs().max(1e-300) {
            return sum;
        }
        prev = sum;
        h *= 0.5;
    }
    prev
}

/// `∫₀^∞ x^r f(x) dx` for the TLG oracle density.
pub fn oracle_moment(theta: f64, p: f64, lambda: f64, r: i32) -> f64 {
    exp_sinh(|x| x.powi(r) * oracle_pdf(theta, p, lambda, x), 1.0 / theta)
}

/// One-sample K-S distance of `sample` from `cdf`.
pub fn ks_one_sample(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Two-sample K-S distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic 1% critical value of the one-sample K-S statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.6276 / (n as f64).sqrt()
}

/// Asymptotic 1% critical value of the two-sample K-S statistic.
pub fn ks2_critical_1pct(n: usize, m: usize) -> f64 {
    1.6276 * ((n + m) as f64 / (n * m) as f64).sqrt()
}

/// Central finite difference with Richardson extrapolation.
pub fn derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Deterministic pseudo-random triples spread over the valid parameter space.
pub fn parameter_triples(count: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    // xorshift64*: independent of the library's generator
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = move || {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        (state.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| {
            let theta = 0.1 * 30f64.powf(next());
            let p = -0.9 + 1.8 * next();
            let lambda = -1.0 + 2.0 * next();
            (theta, p, lambda)
        })
        .collect()
}

pub fn report(criterion: &str, pass: bool, detail: impl std::fmt::Display) {
    println!("{} {criterion}: {detail}", if pass { "PASS" } else { "FAIL" });
}
