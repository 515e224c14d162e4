use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::{check_config, SolveResult, SolverConfig};
use crate::error::{invalid, Result};
use crate::linalg::{conjugate_gradient, dist2, norm2};
use crate::operator::LinearOperator;
use crate::prox::{DuplicationMap, Prox};
use crate::signal::Signal;

/// Consensus ADMM for `min ½‖u − A S v‖² + g(v)`, where `S` sums the latent
/// copies of a [`DuplicationMap`] and `g` is a block-separable latent
/// penalty. The least-squares update runs warm-started CG, the penalty
/// update is the block prox, and `ρ` is rebalanced by factors of two when
/// one residual dominates the other. The estimate is `x = S z` for the
/// penalized copy `z`, returned in `latent`.
pub fn admm_duplication(
    a: &LinearOperator,
    u: &[f64],
    map: &DuplicationMap,
    penalty: &dyn Prox,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_config(config)?;
    let n = a.cols();
    if u.len() != a.rows() || map.dim() != n {
        return Err(invalid(
            "dimension mismatch between operator, data and duplication map",
        ));
    }
    let latent = map.latent_dim();
    let mut rhs_data = vec![0.0; latent];
    map.replicate(&a.adjoint(u), &mut rhs_data);

    let mut v = vec![0.0; latent];
    let mut z = vec![0.0; latent];
    let mut w = vec![0.0; latent];
    let mut z_prev = vec![0.0; latent];
    let mut rhs = vec![0.0; latent];
    let mut input = vec![0.0; latent];
    let mut rho = config.rho;
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    let mut primal = f64::INFINITY;
    let cg_cap = latent.clamp(1, 500);

    while iterations < config.max_iters {
        iterations += 1;
        for i in 0..latent {
            rhs[i] = rhs_data[i] + rho * (z[i] - w[i]);
        }
        conjugate_gradient(latent_normal(a, map, rho), &rhs, &mut v, 1e-10, cg_cap);

        z_prev.copy_from_slice(&z);
        for i in 0..latent {
            input[i] = v[i] + w[i];
        }
        penalty.prox(&input, 1.0 / rho, &mut z)?;
        for i in 0..latent {
            w[i] += v[i] - z[i];
        }

        primal = dist2(&v, &z);
        let dual = rho * dist2(&z, &z_prev);
        if config.trace {
            trace.push(objective(a, u, map, penalty, &z));
        }
        let scale = norm2(&v).max(norm2(&z)).max(1.0);
        let dual_scale = (rho * norm2(&w)).max(1.0);
        if primal <= config.tol * scale && dual <= config.tol * dual_scale {
            converged = true;
            break;
        }
        if primal > 10.0 * dual {
            rho *= 2.0;
            w.iter_mut().for_each(|x| *x /= 2.0);
        } else if dual > 10.0 * primal {
            rho /= 2.0;
            w.iter_mut().for_each(|x| *x *= 2.0);
        }
    }
    let mut x = vec![0.0; n];
    map.sum_copies(&z, &mut x);
    Ok(SolveResult {
        objective: objective(a, u, map, penalty, &z),
        estimate: Signal::from(x),
        iterations,
        residual: primal,
        converged,
        trace,
        latent: Some(z),
        ridge_fallback: false,
    })
}

/// Consensus ADMM for `min ½‖u − Ax‖² + g(Rx)`, where `R` replicates `x`
/// into the copies of a [`DuplicationMap`] and `g` is block-separable over
/// those copies. Splits `z = Rx`; the `x` update solves
/// `(AᵀA + ρ RᵀR) x = Aᵀu + ρ Rᵀ(z − w)` by warm-started CG. The copy `z` is
/// returned in `latent`.
pub fn admm_replicated(
    a: &LinearOperator,
    u: &[f64],
    map: &DuplicationMap,
    penalty: &dyn Prox,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_config(config)?;
    let n = a.cols();
    if u.len() != a.rows() || map.dim() != n {
        return Err(invalid(
            "dimension mismatch between operator, data and duplication map",
        ));
    }
    let latent = map.latent_dim();
    let aty = a.adjoint(u);
    let multiplicity: Vec<f64> = map.multiplicity().into_iter().map(|c| c as f64).collect();

    let mut x = vec![0.0; n];
    let mut rx = vec![0.0; latent];
    let mut z = vec![0.0; latent];
    let mut w = vec![0.0; latent];
    let mut z_prev = vec![0.0; latent];
    let mut diff = vec![0.0; latent];
    let mut back = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut input = vec![0.0; latent];
    let mut rho = config.rho;
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    let mut primal = f64::INFINITY;
    let cg_cap = n.clamp(1, 500);

    while iterations < config.max_iters {
        iterations += 1;
        for i in 0..latent {
            diff[i] = z[i] - w[i];
        }
        map.sum_copies(&diff, &mut back);
        for i in 0..n {
            rhs[i] = aty[i] + rho * back[i];
        }
        conjugate_gradient(
            replicated_normal(a, &multiplicity, rho),
            &rhs,
            &mut x,
            1e-10,
            cg_cap,
        );
        map.replicate(&x, &mut rx);

        z_prev.copy_from_slice(&z);
        for i in 0..latent {
            input[i] = rx[i] + w[i];
        }
        penalty.prox(&input, 1.0 / rho, &mut z)?;
        for i in 0..latent {
            w[i] += rx[i] - z[i];
            diff[i] = z[i] - z_prev[i];
        }
        map.sum_copies(&diff, &mut back);

        primal = dist2(&rx, &z);
        let dual = rho * norm2(&back);
        if config.trace {
            trace.push(replicated_objective(a, u, map, penalty, &x));
        }
        let scale = norm2(&rx).max(norm2(&z)).max(1.0);
        let dual_scale = (rho * norm2(&w)).max(1.0);
        if primal <= config.tol * scale && dual <= config.tol * dual_scale {
            converged = true;
            break;
        }
        if primal > 10.0 * dual {
            rho *= 2.0;
            w.iter_mut().for_each(|x| *x /= 2.0);
        } else if dual > 10.0 * primal {
            rho /= 2.0;
            w.iter_mut().for_each(|x| *x *= 2.0);
        }
    }
    Ok(SolveResult {
        objective: replicated_objective(a, u, map, penalty, &x),
        estimate: Signal::from(x),
        iterations,
        residual: primal,
        converged,
        trace,
        latent: Some(z),
        ridge_fallback: false,
    })
}

fn replicated_objective(
    a: &LinearOperator,
    u: &[f64],
    map: &DuplicationMap,
    penalty: &dyn Prox,
    x: &[f64],
) -> f64 {
    let mut rx = vec![0.0; map.latent_dim()];
    map.replicate(x, &mut rx);
    let r: f64 = a
        .forward(x)
        .iter()
        .zip(u)
        .map(|(p, q)| (p - q) * (p - q))
        .sum();
    0.5 * r + penalty.penalty(&rx)
}

/// `x ↦ (AᵀA + ρ diag(multiplicity)) x`
fn replicated_normal<'a>(
    a: &'a LinearOperator,
    multiplicity: &'a [f64],
    rho: f64,
) -> impl Fn(&[f64], &mut [f64]) + 'a {
    let image = RefCell::new(vec![0.0; a.rows()]);
    move |x: &[f64], out: &mut [f64]| {
        let image = &mut *image.borrow_mut();
        a.apply(x, image);
        a.apply_adjoint(image, out);
        for ((o, xi), c) in out.iter_mut().zip(x).zip(multiplicity) {
            *o += rho * c * xi;
        }
    }
}

fn objective(
    a: &LinearOperator,
    u: &[f64],
    map: &DuplicationMap,
    penalty: &dyn Prox,
    z: &[f64],
) -> f64 {
    let mut x = vec![0.0; map.dim()];
    map.sum_copies(z, &mut x);
    let r: f64 = a
        .forward(&x)
        .iter()
        .zip(u)
        .map(|(p, q)| (p - q) * (p - q))
        .sum();
    0.5 * r + penalty.penalty(z)
}

/// `v ↦ (SᵀAᵀA S + ρ I) v`
fn latent_normal<'a>(
    a: &'a LinearOperator,
    map: &'a DuplicationMap,
    rho: f64,
) -> impl Fn(&[f64], &mut [f64]) + 'a {
    let buffers = RefCell::new((
        vec![0.0; a.cols()],
        vec![0.0; a.rows()],
        vec![0.0; a.cols()],
    ));
    move |v: &[f64], out: &mut [f64]| {
        let (x, image, back) = &mut *buffers.borrow_mut();
        map.sum_copies(v, x);
        a.apply(x, image);
        a.apply_adjoint(image, back);
        map.replicate(back, out);
        out.iter_mut().zip(v).for_each(|(o, vi)| *o += rho * vi);
    }
}
