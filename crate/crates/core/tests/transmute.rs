mod common;

use common::{exp_sinh, ks_one_sample};
use tlg_core::dist::{self, LgParams, LindleyParams, TlgParams};
use tlg_core::transmute::{BaseDistribution, TransmutedDistribution};
use tlg_core::RandomSource;

/// Unit exponential, a base outside the Lindley family.
struct Exponential;

impl BaseDistribution for Exponential {
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            (-x).exp()
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            -(-x).exp_m1()
        }
    }

    fn sample(&self, rng: &mut RandomSource) -> f64 {
        -(1.0 - rng.uniform()).ln()
    }
}

/// A base whose cdf overshoots 1; the combinator must clamp it.
struct Sloppy;

impl BaseDistribution for Sloppy {
    fn pdf(&self, _x: f64) -> f64 {
        1.0
    }

    fn cdf(&self, x: f64) -> f64 {
        x
    }

    fn sample(&self, rng: &mut RandomSource) -> f64 {
        rng.uniform()
    }
}

#[test]
fn lemma_holds_for_every_base() {
    let lambdas = [-1.0, -0.5, 0.5, 1.0];
    for &l in &lambdas {
        let lindley = TransmutedDistribution::new(LindleyParams::new(0.5).unwrap(), l).unwrap();
        let lg = TransmutedDistribution::new(LgParams::new(0.3, 0.8).unwrap(), l).unwrap();
        let exp = TransmutedDistribution::new(Exponential, l).unwrap();
        for total in [
            exp_sinh(|x| lindley.transmuted_pdf(x), 2.0),
            exp_sinh(|x| lg.transmuted_pdf(x), 3.0),
            exp_sinh(|x| exp.transmuted_pdf(x), 1.0),
        ] {
            assert!((total - 1.0).abs() < 1e-8, "λ={l}: {total}");
        }
    }
}

#[test]
fn mixture_identity() {
    for &l in &[-1.0, -0.7, -0.1, 0.0, 0.2, 0.9, 1.0] {
        let t = TransmutedDistribution::new(Exponential, l).unwrap();
        for i in 0..200 {
            let x = i as f64 * 0.05;
            assert!((t.transmuted_cdf(x) - t.mixture_cdf(x)).abs() < 1e-14);
        }
    }
}

#[test]
fn lg_base_matches_direct_tlg() {
    let direct = TlgParams::new(0.5, -0.3, 0.4).unwrap();
    let t = TransmutedDistribution::new(direct.lg(), direct.lambda()).unwrap();
    for i in 0..300 {
        let x = i as f64 * 0.1;
        assert!((t.cdf(x) - dist::tlg_cdf(&direct, x)).abs() < 1e-14);
        assert!((t.pdf(x) - dist::tlg_pdf(&direct, x)).abs() < 1e-14);
    }
}

#[test]
fn lambda_zero_sampler_is_base() {
    let base = LindleyParams::new(1.3).unwrap();
    let t = TransmutedDistribution::new(base, 0.0).unwrap();
    let mut a = RandomSource::from_seed(5);
    let mut b = RandomSource::from_seed(5);
    for _ in 0..1000 {
        assert_eq!(t.sample(&mut a), base.sample(&mut b));
    }
}

#[test]
fn lambda_one_is_min_of_two() {
    let t = TransmutedDistribution::new(Exponential, 1.0).unwrap();
    for i in 0..100 {
        let x = i as f64 * 0.1;
        let f = Exponential.cdf(x);
        assert!((t.transmuted_cdf(x) - (2.0 * f - f * f)).abs() < 1e-15);
    }
    let mut rng = RandomSource::from_seed(8);
    let draws: Vec<f64> = (0..20_000).map(|_| t.sample(&mut rng)).collect();
    // min of two unit exponentials is exponential with rate 2
    let d = ks_one_sample(&draws, |x| -(-2.0 * x).exp_m1());
    assert!(d < common::ks_critical_1pct(draws.len()), "{d}");
}

#[test]
fn sampler_matches_fitted_cdf() {
    let params = TlgParams::new(0.171, 0.657, -0.954).unwrap();
    let t = TransmutedDistribution::new(params.lg(), params.lambda()).unwrap();
    let mut rng = RandomSource::from_seed(9);
    let draws: Vec<f64> = (0..100_000).map(|_| t.sample(&mut rng)).collect();
    let d = ks_one_sample(&draws, |x| dist::tlg_cdf(&params, x));
    assert!(d < 0.01, "{d}");
}

#[test]
fn nonnegative_on_grid() {
    let base = LgParams::new(2.0, -0.9).unwrap();
    for k in 0..=20 {
        let l = -1.0 + 0.1 * k as f64;
        let t = TransmutedDistribution::new(base, l).unwrap();
        for i in 0..1000 {
            assert!(t.transmuted_pdf(i as f64 * 0.01) >= 0.0);
        }
    }
}

#[test]
fn out_of_range_base_cdf_is_clamped() {
    let t = TransmutedDistribution::new(Sloppy, 0.5).unwrap();
    assert_eq!(t.transmuted_cdf(1.5), 1.0);
    assert_eq!(t.transmuted_cdf(-0.5), 0.0);
}
