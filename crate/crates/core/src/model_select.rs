//! Goodness of fit and information criteria across fitted models.

use serde::Serialize;

use crate::data::Dataset;
use crate::dist;
use crate::error::{Error, Result};
use crate::estimation::{FitResult, Model};

/// One-sample Kolmogorov–Smirnov statistic
/// `max_i max(i/n − F(x_(i)), F(x_(i)) − (i−1)/n)`.
pub fn ks_statistic(cdf: impl Fn(f64) -> f64, data: &Dataset) -> f64 {
    let n = data.n() as f64;
    data.values()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let i = i as f64;
            ((i + 1.0) / n - f).max(f - i / n)
        })
        .fold(0.0, f64::max)
}

/// `AIC = 2k − 2ℓ` and `AICC = AIC + 2k(k+1)/(n − k − 1)`.
pub fn aic_aicc(loglik: f64, k: usize, n: usize) -> Result<(f64, f64)> {
    if n <= k + 1 {
        return Err(Error::Domain(format!(
            "AICC needs n > k + 1, got n = {n}, k = {k}"
        )));
    }
    let kf = k as f64;
    let aic = 2.0 * kf - 2.0 * loglik;
    let aicc = aic + 2.0 * kf * (kf + 1.0) / (n as f64 - kf - 1.0);
    Ok((aic, aicc))
}

/// Rank (1 = best, i.e. smallest) of a row under each criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub ks: usize,
    pub neg2ll: usize,
    pub aic: usize,
    pub aicc: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub model: Model,
    pub k: usize,
    pub ks: f64,
    pub neg2ll: f64,
    pub aic: f64,
    pub aicc: f64,
    pub ranks: Ranks,
}

fn rank_by(rows: &[ComparisonRow], key: impl Fn(&ComparisonRow) -> f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| key(&rows[a]).total_cmp(&key(&rows[b])));
    let mut ranks = vec![0; rows.len()];
    for (pos, idx) in order.into_iter().enumerate() {
        ranks[idx] = pos + 1;
    }
    ranks
}

/// One row per fit, sorted by AIC ascending.
pub fn compare_models(fits: &[FitResult], data: &Dataset) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::with_capacity(fits.len());
    for fit in fits {
        if fit.n != data.n() {
            return Err(Error::Data(format!(
                "{} fit used n = {} but the dataset has n = {}",
                fit.model,
                fit.n,
                data.n()
            )));
        }
        let params = fit.params()?;
        let ks = ks_statistic(|x| dist::tlg_cdf(&params, x), data);
        let (aic, aicc) = aic_aicc(fit.loglik, fit.k(), data.n())?;
        rows.push(ComparisonRow {
            model: fit.model,
            k: fit.k(),
            ks,
            neg2ll: -2.0 * fit.loglik,
            aic,
            aicc,
            ranks: Ranks {
                ks: 0,
                neg2ll: 0,
                aic: 0,
                aicc: 0,
            },
        });
    }
    let ks = rank_by(&rows, |r| r.ks);
    let neg2ll = rank_by(&rows, |r| r.neg2ll);
    let aic = rank_by(&rows, |r| r.aic);
    let aicc = rank_by(&rows, |r| r.aicc);
    for (i, row) in rows.iter_mut().enumerate() {
        row.ranks = Ranks {
            ks: ks[i],
            neg2ll: neg2ll[i],
            aic: aic[i],
            aicc: aicc[i],
        };
    }
    rows.sort_by(|a, b| a.aic.total_cmp(&b.aic));
    Ok(rows)
}
