//! Derivative-free local minimization.
//!
//! Nelder–Mead over an objective that returns `+∞` outside the feasible
//! region, so bounds are enforced by rejection rather than by
//! reparametrization.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOptions {
    /// Number of deterministic starting points.
    pub starts: usize,
    /// Iteration cap per start.
    pub max_iter: usize,
    /// Spread of objective values across the simplex at convergence.
    pub ftol: f64,
    /// Simplex diameter at convergence.
    pub xtol: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            starts: 8,
            max_iter: 5000,
            ftol: 1e-10,
            xtol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn build_simplex(f: &impl Fn(&[f64]) -> f64, x0: &[f64], step: &[f64]) -> Vec<(Vec<f64>, f64)> {
    let mut simplex = vec![(x0.to_vec(), f(x0))];
    for i in 0..x0.len() {
        let mut chosen = None;
        let mut h = step[i];
        for _ in 0..30 {
            for dir in [1.0, -1.0] {
                let mut v = x0.to_vec();
                v[i] += dir * h;
                let fv = f(&v);
                if fv.is_finite() {
                    chosen = Some((v, fv));
                    break;
                }
            }
            if chosen.is_some() {
                break;
            }
            h *= 0.5;
        }
        simplex.push(chosen.unwrap_or_else(|| {
            let mut v = x0.to_vec();
            v[i] += step[i];
            let fv = f(&v);
            (v, fv)
        }));
    }
    simplex
}

fn nelder_mead_once(
    f: &impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: &[f64],
    opts: &OptimizerOptions,
) -> Minimum {
    let dim = x0.len();
    let mut simplex = build_simplex(f, x0, step);
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(v, _)| v.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if best.is_finite() && (worst - best).abs() < opts.ftol && diameter < opts.xtol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for (v, _) in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }
        let along = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim].0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let f_reflected = f(&reflected);
        if f_reflected < simplex[0].1 {
            let expanded = along(EXPAND);
            let f_expanded = f(&expanded);
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
            continue;
        }
        let (candidate, f_candidate) = if f_reflected < simplex[dim].1 {
            let outside = along(CONTRACT);
            let fo = f(&outside);
            (outside, fo)
        } else {
            let inside = along(-CONTRACT);
            let fi = f(&inside);
            (inside, fi)
        };
        if f_candidate < simplex[dim].1.min(f_reflected) {
            simplex[dim] = (candidate, f_candidate);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for (v, fv) in simplex.iter_mut().skip(1) {
            for (x, a) in v.iter_mut().zip(&anchor) {
                *x = a + SHRINK * (*x - a);
            }
            *fv = f(v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        iterations,
        converged,
    }
}

/// Minimizes `f` from `x0` with initial simplex offsets `step`, then
/// restarts once from the result to guard against a collapsed simplex.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: &[f64],
    opts: &OptimizerOptions,
) -> Minimum {
    let first = nelder_mead_once(&f, x0, step, opts);
    if !first.value.is_finite() {
        return first;
    }
    let small: Vec<f64> = step.iter().map(|s| s * 0.1).collect();
    let second = nelder_mead_once(&f, &first.x, &small, opts);
    let iterations = first.iterations + second.iterations;
    if second.value <= first.value {
        Minimum {
            iterations,
            ..second
        }
    } else {
        Minimum {
            iterations,
            ..first
        }
    }
}
