use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::linalg::{dist2, norm2, norm_inf};

/// Recovery quality of an estimate against a reference signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub relative_error: f64,
    /// Decibels; `+∞` when the estimate is exact.
    pub psnr: f64,
    pub support_precision: f64,
    pub support_recall: f64,
}

/// Entries of `x̂` below this fraction of `‖x̂‖_∞` count as zero for the
/// support metrics.
pub const SUPPORT_THRESHOLD: f64 = 1e-8;

/// Compares `estimate` with `reference`. PSNR uses `peak = max|reference|`.
pub fn metrics(estimate: &[f64], reference: &[f64]) -> Result<Metrics> {
    if estimate.len() != reference.len() {
        return Err(invalid("estimate and reference lengths differ"));
    }
    let ref_norm = norm2(reference);
    if ref_norm == 0.0 {
        return Err(Error::UndefinedReference);
    }
    let err = dist2(estimate, reference);
    let n = reference.len() as f64;
    let mse = err * err / n;
    let peak = norm_inf(reference);
    let psnr = if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (peak * peak / mse).log10()
    };

    let cutoff = SUPPORT_THRESHOLD * norm_inf(estimate);
    let mut hits = 0usize;
    let mut est_size = 0usize;
    let mut true_size = 0usize;
    for (e, r) in estimate.iter().zip(reference) {
        let in_est = e.abs() > cutoff;
        let in_true = *r != 0.0;
        est_size += in_est as usize;
        true_size += in_true as usize;
        hits += (in_est && in_true) as usize;
    }
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            1.0
        } else {
            num as f64 / den as f64
        }
    };
    Ok(Metrics {
        relative_error: err / ref_norm,
        psnr,
        support_precision: ratio(hits, est_size),
        support_recall: ratio(hits, true_size),
    })
}
