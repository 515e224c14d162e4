use alloc::vec;
use alloc::vec::Vec;

use super::sfm::{sfm_graphcut, sfm_minnorm};
use super::{CutFunction, CutSplit, ModularFunction, SetFunction};
use crate::error::{invalid, Result};
use crate::operator::{lipschitz_estimate, LinearOperator};
use crate::signal::{Signal, Support};

#[derive(Debug, Clone)]
pub struct MmConfig {
    pub lambda: f64,
    pub tau: f64,
    pub max_iters: usize,
    /// Lipschitz constant of `∇f`; estimated by power iteration when absent.
    pub lipschitz: Option<f64>,
    /// Relative objective decrease below which iteration stops.
    pub tol: f64,
    /// Duality-gap tolerance handed to the min-norm-point backend.
    pub sfm_tol: f64,
}

impl Default for MmConfig {
    fn default() -> Self {
        MmConfig {
            lambda: 1.0,
            tau: 0.0,
            max_iters: 100,
            lipschitz: None,
            tol: 1e-10,
            sfm_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MmResult {
    pub estimate: Signal,
    /// Set chosen by the last minimization step. It can contain coordinates
    /// whose restricted gradient step is exactly zero.
    pub support: Support,
    /// Objective at `x0` followed by the objective after each iteration.
    pub trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// `½‖u − Ax‖² + λ R(supp x) + τ |supp x|`
pub fn mm_objective(
    a: &LinearOperator,
    u: &[f64],
    r: &SetFunction,
    lambda: f64,
    tau: f64,
    x: &[f64],
) -> f64 {
    let mask: Vec<bool> = x.iter().map(|v| *v != 0.0).collect();
    let k = mask.iter().filter(|b| **b).count() as f64;
    let residual: f64 = a
        .forward(x)
        .iter()
        .zip(u)
        .map(|(ax, ui)| (ui - ax) * (ui - ax))
        .sum();
    let reg = if lambda == 0.0 {
        0.0
    } else {
        lambda * r.eval(&mask)
    };
    0.5 * residual + reg + tau * k
}

/// Majorization-minimization for submodular-regularized least squares.
/// Each step minimizes the modular majorizer plus `λR + τ|·|` exactly and
/// takes the gradient step restricted to the chosen support.
pub fn mm_solve(
    a: &LinearOperator,
    u: &[f64],
    r: &SetFunction,
    config: &MmConfig,
    x0: &[f64],
) -> Result<MmResult> {
    let n = a.cols();
    if u.len() != a.rows() || x0.len() != n || r.n() != n {
        return Err(invalid(
            "dimension mismatch between operator, data and set function",
        ));
    }
    if !(config.lambda >= 0.0) || !(config.tau >= 0.0) {
        return Err(invalid("lambda and tau must be non-negative"));
    }
    let mut l = match config.lipschitz {
        Some(l) if l > 0.0 && l.is_finite() => l,
        Some(_) => return Err(invalid("Lipschitz constant must be positive")),
        None => lipschitz_estimate(a, 200),
    };
    if l == 0.0 {
        l = 1.0;
    }
    let split = r.as_cut_plus_modular();
    let mut x = x0.to_vec();
    let mut objective = mm_objective(a, u, r, config.lambda, config.tau, &x);
    let mut trace = vec![objective];
    let mut support = Support::from_mask(&x.iter().map(|v| *v != 0.0).collect::<Vec<_>>());
    let mut converged = false;
    let mut iterations = 0;

    while iterations < config.max_iters {
        iterations += 1;
        let residual: Vec<f64> = a
            .forward(&x)
            .iter()
            .zip(u)
            .map(|(ax, ui)| ax - ui)
            .collect();
        let grad = a.adjoint(&residual);
        // Backtrack on L only if the estimate under-shoots the true constant.
        let (next, next_support, next_obj) = loop {
            let z: Vec<f64> = x.iter().zip(&grad).map(|(xi, g)| xi - g / l).collect();
            let weights: Vec<f64> = z.iter().map(|zj| -0.5 * l * zj * zj).collect();
            let chosen = minimize_majorizer(r, split.as_ref(), &weights, config)?;
            let mut cand = vec![0.0; n];
            for &j in chosen.indices() {
                cand[j] = z[j];
            }
            let obj = mm_objective(a, u, r, config.lambda, config.tau, &cand);
            if obj <= objective + 1e-12 * objective.abs().max(1.0) || l > 1e12 {
                break (cand, chosen, obj);
            }
            l *= 2.0;
        };
        let decrease = objective - next_obj;
        x = next;
        support = next_support;
        trace.push(next_obj);
        objective = next_obj;
        if decrease <= config.tol * objective.abs().max(1.0) {
            converged = true;
            break;
        }
    }
    Ok(MmResult {
        estimate: Signal::from(x),
        support,
        trace,
        iterations,
        converged,
    })
}

fn minimize_majorizer(
    r: &SetFunction,
    split: Option<&CutSplit>,
    weights: &[f64],
    config: &MmConfig,
) -> Result<Support> {
    let lambda = config.lambda;
    match split {
        Some((edges, modular)) => {
            let n = weights.len();
            let scaled: Vec<(usize, usize, f64)> = if lambda > 0.0 {
                edges.iter().map(|&(i, j, w)| (i, j, lambda * w)).collect()
            } else {
                Vec::new()
            };
            let cut = CutFunction::new(n, scaled)?;
            let w: Vec<f64> = weights
                .iter()
                .zip(modular)
                .map(|(m, rw)| m + lambda * rw + config.tau)
                .collect();
            Ok(sfm_graphcut(&cut, &ModularFunction::new(w))?.set)
        }
        None => {
            let w: Vec<f64> = weights.iter().map(|m| m + config.tau).collect();
            let f = SetFunction::sum(vec![SetFunction::modular(w), r.scaled(lambda)])?;
            let scale = weights.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
            Ok(sfm_minnorm(&f, config.sfm_tol * scale, 100_000)?.set)
        }
    }
}
