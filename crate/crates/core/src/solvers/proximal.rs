use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::{SmoothObjective, SolveResult, SolverConfig};
use crate::error::{invalid, Result};
use crate::linalg::dist2;
use crate::prox::Prox;

/// Accelerated proximal gradient on `f + g` with Nesterov momentum. With
/// `config.restart` the momentum resets whenever the objective would
/// increase, which keeps the objective monotone. Stops when the gradient
/// mapping `L‖x⁺ − y‖` drops below `config.tol`.
pub fn fista(
    f: &dyn SmoothObjective,
    lipschitz: f64,
    g: &dyn Prox,
    config: &SolverConfig,
    x0: &[f64],
) -> Result<SolveResult> {
    proximal_gradient(f, lipschitz, g, config, x0, true)
}

/// Proximal gradient without momentum; the objective is non-increasing.
pub fn ista(
    f: &dyn SmoothObjective,
    lipschitz: f64,
    g: &dyn Prox,
    config: &SolverConfig,
    x0: &[f64],
) -> Result<SolveResult> {
    proximal_gradient(f, lipschitz, g, config, x0, false)
}

fn proximal_gradient(
    f: &dyn SmoothObjective,
    lipschitz: f64,
    g: &dyn Prox,
    config: &SolverConfig,
    x0: &[f64],
    accelerate: bool,
) -> Result<SolveResult> {
    if !(lipschitz > 0.0) || !lipschitz.is_finite() {
        return Err(invalid("Lipschitz constant must be positive"));
    }
    if x0.len() != f.dim() {
        return Err(invalid("start has the wrong dimension"));
    }
    let step = config.step.unwrap_or(1.0 / lipschitz);
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut y = x.clone();
    let mut next = vec![0.0; n];
    let mut grad = vec![0.0; n];
    let mut forward = vec![0.0; n];
    let mut t = 1.0f64;
    let mut objective = f.value(&x) + g.penalty(&x);
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    let mut mapping = f64::INFINITY;

    while iterations < config.max_iters {
        iterations += 1;
        f.value_and_gradient(&y, &mut grad);
        for ((fw, yi), gi) in forward.iter_mut().zip(&y).zip(&grad) {
            *fw = yi - step * gi;
        }
        g.prox(&forward, step, &mut next)?;
        let candidate = f.value(&next) + g.penalty(&next);
        let at_x = y == x;
        if accelerate && config.restart && candidate > objective && !at_x {
            t = 1.0;
            y.copy_from_slice(&x);
            continue;
        }
        mapping = dist2(&next, &y) / step;
        if accelerate {
            let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
            let beta = (t - 1.0) / t_next;
            for ((yi, ni), xi) in y.iter_mut().zip(&next).zip(&x) {
                *yi = ni + beta * (ni - xi);
            }
            t = t_next;
        } else {
            y.copy_from_slice(&next);
        }
        x.copy_from_slice(&next);
        objective = candidate;
        if config.trace {
            trace.push(objective);
        }
        if mapping <= config.tol {
            converged = true;
            break;
        }
    }
    Ok(SolveResult {
        estimate: x.into(),
        iterations,
        objective,
        residual: mapping,
        converged,
        trace,
        latent: None,
        ridge_fallback: false,
    })
}
