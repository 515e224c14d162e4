use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::{check_config, SolveResult, SolverConfig};
use crate::error::{invalid, Result};
use crate::linalg::{conjugate_gradient, dist2, norm2};
use crate::models::ModelProjection;
use crate::operator::LinearOperator;
use crate::signal::{Signal, Support};

const RIDGE: f64 = 1e-10;

/// Model-based CoSaMP: identify a `2k` model support of the proxy
/// `Aᵀ(u − Ax)`, merge it with the current support, solve least squares on
/// the merged columns and prune back with the `k` model projection. Returns
/// the iterate with the smallest residual seen.
pub fn model_cosamp(
    a: &LinearOperator,
    u: &[f64],
    model: &dyn ModelProjection,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_config(config)?;
    if u.len() != a.rows() {
        return Err(invalid("data length does not match the operator"));
    }
    let n = a.cols();
    let k = model.budget();
    let unorm = norm2(u);
    let mut x = vec![0.0; n];
    let mut support = Support::empty(n);
    let mut best = (unorm, x.clone());
    let mut ridge_fallback = false;
    let mut trace = Vec::new();
    let mut converged = unorm == 0.0;
    let mut iterations = 0;

    while !converged && iterations < config.max_iters {
        iterations += 1;
        let residual: Vec<f64> = a
            .forward(&x)
            .iter()
            .zip(u)
            .map(|(ax, ui)| ui - ax)
            .collect();
        let proxy = a.adjoint(&residual);
        let (_, omega) = model.project_with_budget(&proxy, 2 * k);
        let merged = omega.union(&support);

        let (b, fallback) = restricted_least_squares(a, u, merged.indices(), 3 * k.max(1));
        ridge_fallback |= fallback;
        let (next, next_support) = model.project(&b);
        let next = next.into_inner();

        let r: Vec<f64> = a
            .forward(&next)
            .iter()
            .zip(u)
            .map(|(ax, ui)| ui - ax)
            .collect();
        let rnorm = norm2(&r);
        if config.trace {
            trace.push(0.5 * rnorm * rnorm);
        }
        let change = dist2(&next, &x);
        let scale = norm2(&next).max(f64::MIN_POSITIVE);
        x = next;
        support = next_support;
        if rnorm < best.0 {
            best = (rnorm, x.clone());
        }
        if rnorm <= config.tol * unorm || change <= config.tol * scale {
            converged = true;
        }
    }
    let (rnorm, x) = best;
    Ok(SolveResult {
        estimate: Signal::from(x),
        iterations,
        objective: 0.5 * rnorm * rnorm,
        residual: rnorm,
        converged,
        trace,
        latent: None,
        ridge_fallback,
    })
}

/// `argmin_{supp b ⊆ T} ‖u − Ab‖` by conjugate gradients on the normal
/// equations; retries with a `1e-10` ridge if CG breaks down or stalls.
fn restricted_least_squares(
    a: &LinearOperator,
    u: &[f64],
    cols: &[usize],
    cap: usize,
) -> (Vec<f64>, bool) {
    let n = a.cols();
    let back = a.adjoint(u);
    let rhs: Vec<f64> = cols.iter().map(|&j| back[j]).collect();
    let mut z = vec![0.0; cols.len()];
    let cap = cap.max(cols.len());
    let outcome = conjugate_gradient(normal_operator(a, cols, 0.0), &rhs, &mut z, 1e-10, cap);
    let fallback =
        outcome.breakdown || outcome.residual > 1e-10 * norm2(&rhs).max(f64::MIN_POSITIVE);
    if fallback {
        z.fill(0.0);
        conjugate_gradient(normal_operator(a, cols, RIDGE), &rhs, &mut z, 1e-10, cap);
    }
    let mut b = vec![0.0; n];
    for (&j, &zj) in cols.iter().zip(&z) {
        b[j] = zj;
    }
    (b, fallback)
}

/// `v ↦ (A_Tᵀ A_T + ridge·I) v` for the columns `T`.
fn normal_operator<'a>(
    a: &'a LinearOperator,
    cols: &'a [usize],
    ridge: f64,
) -> impl Fn(&[f64], &mut [f64]) + 'a {
    let buffers = RefCell::new((
        vec![0.0; a.cols()],
        vec![0.0; a.rows()],
        vec![0.0; a.cols()],
    ));
    move |v: &[f64], out: &mut [f64]| {
        let (full, image, back) = &mut *buffers.borrow_mut();
        full.fill(0.0);
        for (&j, &vj) in cols.iter().zip(v) {
            full[j] = vj;
        }
        a.apply(full, image);
        a.apply_adjoint(image, back);
        for ((o, &j), &vj) in out.iter_mut().zip(cols).zip(v) {
            *o = back[j] + ridge * vj;
        }
    }
}
