mod common;

use common::{exp_sinh, oracle_cdf, oracle_pdf, parameter_triples, tanh_sinh};
use proptest::prelude::*;
use tlg_core::dist::*;
use tlg_core::Error;

fn fitted() -> TlgParams {
    TlgParams::new(0.171, 0.657, -0.954).unwrap()
}

#[test]
fn lindley_known_values() {
    let one = LindleyParams::new(1.0).unwrap();
    // θ²/(θ+1)·(1+x)e^{−θx} at θ=1, x=0 and the closed-form cdf at x=1
    assert!((lindley_pdf(&one, 0.0) - 0.5).abs() < 1e-15);
    assert!((lindley_cdf(&one, 1.0) - (1.0 - 1.5 * (-1.0f64).exp())).abs() < 1e-15);
    assert!((lindley_cdf(&one, 1.0) - 0.448_180_8).abs() < 1e-7);
    assert_eq!(lindley_cdf(&one, 0.0), 0.0);
}

#[test]
fn parameter_validation() {
    assert!(matches!(LindleyParams::new(0.0), Err(Error::InvalidParameter(_))));
    assert!(LindleyParams::new(f64::NAN).is_err());
    assert!(LgParams::new(1.0, 1.0).is_err());
    assert!(LgParams::new(1.0, -1.0).is_err());
    assert!(LgParams::new(1.0, -0.242).is_ok());
    assert!(TlgParams::new(1.0, 0.5, 1.0001).is_err());
    assert!(TlgParams::new(1.0, 0.5, -1.0).is_ok());
    assert!(TlgParams::new(1.0, 0.5, 1.0).is_ok());
}

#[test]
fn negative_x_conventions() {
    let params = fitted();
    assert_eq!(tlg_pdf(&params, -1.0), 0.0);
    assert_eq!(tlg_cdf(&params, -1.0), 0.0);
    assert_eq!(tlg_sf(&params, -1.0), 1.0);
}

#[test]
fn matches_oracle_formulas() {
    for (theta, p, lambda) in parameter_triples(30, 11) {
        let params = TlgParams::new(theta, p, lambda).unwrap();
        for i in 0..50 {
            let x = 0.2 * i as f64 / theta;
            let pdf = tlg_pdf(&params, x);
            let want = oracle_pdf(theta, p, lambda, x);
            assert!((pdf - want).abs() <= 1e-12 * want.abs().max(1e-300) + 1e-300);
            assert!((tlg_cdf(&params, x) - oracle_cdf(theta, p, lambda, x)).abs() < 1e-13);
        }
    }
}

#[test]
fn nesting_is_exact() {
    let lindley = LindleyParams::new(0.7).unwrap();
    let lg = LgParams::new(0.7, 0.0).unwrap();
    let lg_b = LgParams::new(0.7, 0.4).unwrap();
    let tlg = TlgParams::new(0.7, 0.4, 0.0).unwrap();
    for i in 0..200 {
        let x = i as f64 * 0.1;
        assert_eq!(lg_cdf(&lg, x), lindley_cdf(&lindley, x));
        assert!((lg_pdf(&lg, x) - lindley_pdf(&lindley, x)).abs() <= 1e-16);
        assert_eq!(tlg_cdf(&tlg, x), lg_cdf(&lg_b, x));
        assert_eq!(tlg_pdf(&tlg, x), lg_pdf(&lg_b, x));
    }
}

#[test]
fn transmutation_identity() {
    let params = fitted();
    let lg = params.lg();
    let l = params.lambda();
    for i in 0..400 {
        let x = i as f64 * 0.1;
        let g = lg_cdf(&lg, x);
        assert!((tlg_cdf(&params, x) - ((1.0 + l) * g - l * g * g)).abs() < 1e-14);
    }
}

#[test]
fn fitted_density_integrates_to_one() {
    let params = fitted();
    let total = exp_sinh(|x| tlg_pdf(&params, x), 1.0 / params.theta());
    assert!((total - 1.0).abs() < 1e-8, "{total}");
}

#[test]
fn lambda_one_tail_thinner_than_base() {
    let params = TlgParams::new(1.0, 0.3, 1.0).unwrap();
    let lg = params.lg();
    let ratio = |x: f64| tlg_pdf(&params, x) / lg_pdf(&lg, x);
    assert!(ratio(10.0) < ratio(5.0));
    assert!(ratio(30.0) < 1e-9);
}

#[test]
fn pdf_is_derivative_of_cdf() {
    for (theta, p, lambda) in parameter_triples(20, 12) {
        let params = TlgParams::new(theta, p, lambda).unwrap();
        for i in 1..40 {
            let x = 0.25 * i as f64 / theta;
            let numeric = common::derivative(|s| tlg_cdf(&params, s), x, 1e-3 * x);
            let pdf = tlg_pdf(&params, x);
            if pdf > 1e-8 {
                assert!((numeric - pdf).abs() <= 1e-6 * pdf, "x={x} {numeric} vs {pdf}");
            }
        }
    }
}

#[test]
fn survival_complements_cdf() {
    let params = fitted();
    assert_eq!(tlg_sf(&params, 0.0), 1.0);
    for i in 0..1000 {
        let x = (i as f64 * 0.618_033_988_75).fract() * 60.0;
        assert!((tlg_sf(&params, x) + tlg_cdf(&params, x) - 1.0).abs() < 1e-15);
    }
    let tail = tanh_sinh(|x| tlg_pdf(&params, x), 0.0, 38.5);
    let sf = tlg_sf(&params, 38.5);
    assert!(sf > 0.0);
    assert!(((1.0 - tail) - sf).abs() < 1e-10, "{sf} vs {}", 1.0 - tail);
}

#[test]
fn deep_tail_survival_stays_positive() {
    let params = fitted();
    let x = 300.0;
    let sf = tlg_sf(&params, x);
    assert!(sf > 0.0 && sf < 1e-15);
    let direct = exp_sinh(|t| tlg_pdf(&params, x + t), 1.0);
    assert!((sf - direct).abs() <= 1e-8 * direct);
}

#[test]
fn hazard_reduces_to_lindley() {
    let theta = 0.8;
    let params = TlgParams::new(theta, 0.0, 0.0).unwrap();
    for i in 0..50 {
        let x = i as f64 * 0.4;
        let want = theta * theta * (1.0 + x) / (theta + 1.0 + theta * x);
        let h = tlg_hazard(&params, x).unwrap();
        assert!((h - want).abs() <= 1e-13 * want);
    }
}

#[test]
fn hazard_identities() {
    for (theta, p, lambda) in parameter_triples(10, 13) {
        let params = TlgParams::new(theta, p, lambda).unwrap();
        for i in 0..30 {
            let x = 0.3 * i as f64 / theta;
            let h = tlg_hazard(&params, x).unwrap();
            let pdf = tlg_pdf(&params, x);
            assert!((h * tlg_sf(&params, x) - pdf).abs() <= 1e-12 * pdf.max(1e-300));
        }
    }
    let params = fitted();
    let h1 = tlg_hazard(&params, 1.0).unwrap();
    assert!((h1 - tlg_pdf(&params, 1.0) / tlg_sf(&params, 1.0)).abs() < 1e-15);
    assert!(tlg_hazard(&params, f64::INFINITY).is_err());
}

#[test]
fn cumulative_hazard() {
    let params = fitted();
    assert_eq!(tlg_cumhazard(&params, 0.0).unwrap(), 0.0);
    for &x in &[0.5, 5.0, 20.0, 38.5] {
        let integral = tanh_sinh(|s| tlg_hazard(&params, s).unwrap(), 0.0, x);
        let h = tlg_cumhazard(&params, x).unwrap();
        assert!((integral - h).abs() < 1e-6, "x={x}: {integral} vs {h}");
    }
    let mut prev = 0.0;
    for i in 0..1000 {
        let h = tlg_cumhazard(&params, i as f64 * 0.1).unwrap();
        assert!(h >= prev);
        prev = h;
    }
}

#[test]
fn quantile_examples() {
    let params = fitted();
    for &u in &[0.01, 0.5, 0.99] {
        let x = tlg_quantile(&params, u).unwrap();
        assert!((tlg_cdf(&params, x) - u).abs() < 1e-10);
    }
    // bisection oracle for 1 − (1 + x/2)e^{−x} = 0.5
    let (mut lo, mut hi) = (0.0f64, 10.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 1.0 - (1.0 + mid / 2.0) * (-mid).exp() < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lindley = TlgParams::new(1.0, 0.0, 0.0).unwrap();
    let median = tlg_quantile(&lindley, 0.5).unwrap();
    assert!((median - lo).abs() < 1e-10);
    assert!((median - 1.146_193_220_6).abs() < 1e-9);
    assert!(tlg_quantile(&params, 0.0).is_err());
    assert!(tlg_quantile(&params, 1.0).is_err());
}

#[test]
fn lg_quantile_roundtrip() {
    let lg = LgParams::new(0.202, -0.242).unwrap();
    for &u in &[0.001, 0.3, 0.999] {
        let x = lg_quantile(&lg, u).unwrap();
        assert!((lg_cdf(&lg, x) - u).abs() < 1e-10);
    }
}

fn valid_triple() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.02f64..10.0, -0.95f64..0.95, -1.0f64..=1.0)
}

proptest! {
    #[test]
    fn cdf_monotone_and_bounded((theta, p, lambda) in valid_triple()) {
        let params = TlgParams::new(theta, p, lambda).unwrap();
        let mut prev = 0.0;
        for i in 0..1000 {
            let x = i as f64 * 0.02 / theta;
            let c = tlg_cdf(&params, x);
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!(c >= prev);
            prop_assert!(tlg_pdf(&params, x) >= 0.0);
            prev = c;
        }
    }

    #[test]
    fn quantile_monotone((theta, p, lambda) in valid_triple(), a in 0.001f64..0.999, b in 0.001f64..0.999) {
        prop_assume!(a < b);
        let params = TlgParams::new(theta, p, lambda).unwrap();
        let qa = tlg_quantile(&params, a).unwrap();
        let qb = tlg_quantile(&params, b).unwrap();
        prop_assert!(qa <= qb);
        prop_assert!((tlg_cdf(&params, qa) - a).abs() < 1e-10);
    }
}
