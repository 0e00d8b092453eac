//! Quadratic rank transmutation over an arbitrary base distribution.
//!
//! Given a base cdf `F`, the transmuted cdf is `(1 + λ)F − λF²` and the
//! transmuted density is `f·[(1 + λ) − 2λF]`, for `|λ| ≤ 1`. The density
//! factor equals `1 − λ(2F − 1)`, which lies in `[1 − |λ|, 1 + |λ|]`, so the
//! result is a proper density for any base.
//!
//! The transmuted law is also a two-component mixture. For `λ ≥ 0` it is
//! `(1 − λ)·F + λ·(2F − F²)`, the second component being the law of the
//! minimum of two independent base draws; for `λ < 0` it is
//! `(1 + λ)·F + (−λ)·F²`, the second component being the law of the
//! maximum. [`TransmutedDistribution::sample`] draws from that mixture.

use crate::error::{Error, Result};
use crate::sampling::RandomSource;

const CDF_NOISE: f64 = 1e-9;

/// A continuous distribution on `[0, ∞)` that can be transmuted.
pub trait BaseDistribution {
    fn pdf(&self, x: f64) -> f64;
    fn cdf(&self, x: f64) -> f64;
    fn sample(&self, rng: &mut RandomSource) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmutedDistribution<B> {
    base: B,
    lambda: f64,
}

impl<B: BaseDistribution> TransmutedDistribution<B> {
    pub fn new(base: B, lambda: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "transmutation parameter must lie in [-1, 1], got {lambda}"
            )));
        }
        Ok(Self { base, lambda })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn base_cdf(&self, x: f64) -> f64 {
        let v = self.base.cdf(x);
        if !(-CDF_NOISE..=1.0 + CDF_NOISE).contains(&v) {
            log::warn!("base cdf returned {v} at x = {x}; clamping to [0, 1]");
        }
        v.clamp(0.0, 1.0)
    }

    /// `(1 + λ)F(x) − λF(x)²`
    pub fn transmuted_cdf(&self, x: f64) -> f64 {
        let f = self.base_cdf(x);
        (1.0 + self.lambda) * f - self.lambda * f * f
    }

    /// `f(x)·[(1 + λ) − 2λF(x)]`
    pub fn transmuted_pdf(&self, x: f64) -> f64 {
        let f = self.base_cdf(x);
        self.base.pdf(x) * ((1.0 + self.lambda) - 2.0 * self.lambda * f)
    }

    /// The cdf written as its mixture decomposition. Agrees with
    /// [`Self::transmuted_cdf`] up to rounding.
    pub fn mixture_cdf(&self, x: f64) -> f64 {
        let f = self.base_cdf(x);
        let l = self.lambda;
        if l >= 0.0 {
            (1.0 - l) * f + l * (2.0 * f - f * f)
        } else {
            (1.0 + l) * f + (-l) * f * f
        }
    }

    /// One draw from the min/max mixture.
    pub fn transmuted_sample(&self, rng: &mut RandomSource) -> f64 {
        let first = self.base.sample(rng);
        let weight = self.lambda.abs();
        if weight == 0.0 || rng.uniform() >= weight {
            return first;
        }
        let second = self.base.sample(rng);
        if self.lambda > 0.0 {
            first.min(second)
        } else {
            first.max(second)
        }
    }
}

impl<B: BaseDistribution> BaseDistribution for TransmutedDistribution<B> {
    fn pdf(&self, x: f64) -> f64 {
        self.transmuted_pdf(x)
    }

    fn cdf(&self, x: f64) -> f64 {
        self.transmuted_cdf(x)
    }

    fn sample(&self, rng: &mut RandomSource) -> f64 {
        self.transmuted_sample(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{self, LgParams, LindleyParams, TlgParams};

    #[test]
    fn lambda_zero_is_base() {
        let base = LindleyParams::new(0.8).unwrap();
        let t = TransmutedDistribution::new(base, 0.0).unwrap();
        for &x in &[0.0, 0.5, 3.0, 20.0] {
            assert_eq!(t.transmuted_cdf(x), dist::lindley_cdf(&base, x));
            assert_eq!(t.transmuted_pdf(x), dist::lindley_pdf(&base, x));
        }
    }

    #[test]
    fn lambda_one_at_median() {
        let base = LindleyParams::new(1.0).unwrap();
        let t = TransmutedDistribution::new(base, 1.0).unwrap();
        let median = dist::tlg_quantile(&TlgParams::from(base), 0.5).unwrap();
        assert!((t.transmuted_cdf(median) - 0.75).abs() < 1e-11);
    }

    #[test]
    fn matches_direct_tlg() {
        let lg = LgParams::new(0.171, 0.657).unwrap();
        let direct = TlgParams::new(0.171, 0.657, -0.954).unwrap();
        let t = TransmutedDistribution::new(lg, -0.954).unwrap();
        for i in 0..200 {
            let x = i as f64 * 0.25;
            assert!((t.transmuted_cdf(x) - dist::tlg_cdf(&direct, x)).abs() < 1e-14);
            assert!((t.transmuted_pdf(x) - dist::tlg_pdf(&direct, x)).abs() < 1e-14);
        }
    }

    #[test]
    fn transmuted_lindley_composition() {
        // transmuted Lindley: G(1 + λ − λG) with G the Lindley cdf
        let base = LindleyParams::new(0.4).unwrap();
        let t = TransmutedDistribution::new(base, 0.6).unwrap();
        for &x in &[0.2f64, 1.0, 4.0, 12.0] {
            let g = 1.0 - (1.0 + 0.4 * x / 1.4) * (-0.4 * x).exp();
            let want = g * (1.0 + 0.6 - 0.6 * g);
            assert!((t.transmuted_cdf(x) - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_lambda_out_of_range() {
        let base = LindleyParams::new(1.0).unwrap();
        assert!(TransmutedDistribution::new(base, 1.5).is_err());
        assert!(TransmutedDistribution::new(base, -1.0).is_ok());
    }

    #[test]
    fn nonnegative_density() {
        let base = LgParams::new(0.5, 0.9).unwrap();
        for &l in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
            let t = TransmutedDistribution::new(base, l).unwrap();
            for i in 0..1000 {
                assert!(t.transmuted_pdf(i as f64 * 0.05) >= 0.0);
            }
        }
    }
}
