//! Random variate generation for the Lindley, LG and TLG families.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::{self, LgParams, LindleyParams, TlgParams};
use crate::error::{Error, Result};
use crate::transmute::{BaseDistribution, TransmutedDistribution};

/// Largest geometric count the compounding sampler will draw before
/// switching to cdf inversion.
pub const MAX_COMPOUND_COUNT: u64 = 1_000_000;

/// Seedable uniform stream backed by ChaCha8.
///
/// The sequence depends only on the seed (and stream), so results are
/// reproducible across runs and platforms.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream for parallel worker `stream` under `seed`.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform on `(0, 1]`, safe to take the log of.
    fn uniform_open_zero(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    fn exponential(&mut self, rate: f64) -> f64 {
        -self.uniform_open_zero().ln() / rate
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

/// Lindley draw as the mixture of Exp(θ) (weight θ/(θ+1)) and Gamma(2, θ).
pub fn sample_lindley(params: &LindleyParams, rng: &mut RandomSource) -> f64 {
    let theta = params.theta();
    let pick = rng.uniform();
    if pick < theta / (theta + 1.0) {
        rng.exponential(theta)
    } else {
        rng.exponential(theta) + rng.exponential(theta)
    }
}

/// LG draw.
///
/// For `p > 0` this is the minimum of `N` Lindley draws with
/// `N ~ Geometric(1 − p)` on `{1, 2, …}`. For `p ≤ 0`, or when `N` would
/// exceed [`MAX_COMPOUND_COUNT`], the LG cdf is inverted numerically.
pub fn sample_lg(params: &LgParams, rng: &mut RandomSource) -> f64 {
    let p = params.p();
    if p > 0.0 {
        let u = rng.uniform_open_zero();
        let count = 1.0 + (u.ln() / p.ln()).floor();
        if count <= MAX_COMPOUND_COUNT as f64 {
            let lindley = params.lindley();
            let mut best = f64::INFINITY;
            for _ in 0..count as u64 {
                best = best.min(sample_lindley(&lindley, rng));
            }
            return best;
        }
    }
    invert_lg(params, rng)
}

fn invert_lg(params: &LgParams, rng: &mut RandomSource) -> f64 {
    loop {
        let u = rng.uniform();
        if u == 0.0 {
            continue;
        }
        if let Ok(x) = dist::lg_quantile(params, u) {
            return x;
        }
    }
}

/// `n` independent TLG draws from the min/max mixture over the LG base.
pub fn sample_tlg(params: &TlgParams, rng: &mut RandomSource, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample size must be at least 1".into()));
    }
    let t = TransmutedDistribution::new(params.lg(), params.lambda())?;
    Ok((0..n).map(|_| t.transmuted_sample(rng)).collect())
}

/// `n` independent TLG draws by numerical inversion of the cdf. Slower than
/// [`sample_tlg`]; kept as an independent cross-check.
pub fn sample_tlg_inversion(
    params: &TlgParams,
    rng: &mut RandomSource,
    n: usize,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample size must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let u = rng.uniform();
        if u == 0.0 {
            continue;
        }
        out.push(dist::tlg_quantile(params, u)?);
    }
    Ok(out)
}

impl BaseDistribution for LindleyParams {
    fn pdf(&self, x: f64) -> f64 {
        dist::lindley_pdf(self, x)
    }

    fn cdf(&self, x: f64) -> f64 {
        dist::lindley_cdf(self, x)
    }

    fn sample(&self, rng: &mut RandomSource) -> f64 {
        sample_lindley(self, rng)
    }
}

impl BaseDistribution for LgParams {
    fn pdf(&self, x: f64) -> f64 {
        dist::lg_pdf(self, x)
    }

    fn cdf(&self, x: f64) -> f64 {
        dist::lg_cdf(self, x)
    }

    fn sample(&self, rng: &mut RandomSource) -> f64 {
        sample_lg(self, rng)
    }
}
