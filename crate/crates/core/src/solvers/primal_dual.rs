use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::{check_config, SolveResult, SolverConfig};
use crate::error::{invalid, Result};
use crate::linalg::{dist2, dot, norm1, norm2};
use crate::operator::LinearOperator;
use crate::prox::Prox;
use crate::rng::seeded;
use rand::Rng;

/// The structured penalty of a pursuit problem `min g(x) s.t. Ax = u`.
pub enum PdTerm<'a> {
    /// A proximable penalty applied to `x` directly.
    Prox(&'a dyn Prox),
    /// `weight · ‖Dx‖₁` for an analysis operator `D`; handled on the dual
    /// side by clamping to `[−weight, weight]`.
    Analysis { op: &'a LinearOperator, weight: f64 },
    /// `g(Dx)` for a proximable `g`; the dual step uses the Moreau identity.
    Composite {
        op: &'a LinearOperator,
        g: &'a dyn Prox,
    },
}

/// Chambolle–Pock primal-dual iteration (over-relaxation `θ = 1`) for
/// equality-constrained pursuit. Stops when both `‖Ax − u‖ / ‖u‖` and the
/// relative primal change fall below `config.tol`.
pub fn chambolle_pock(
    a: &LinearOperator,
    u: &[f64],
    term: PdTerm<'_>,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_config(config)?;
    let n = a.cols();
    if u.len() != a.rows() {
        return Err(invalid("data length does not match the operator"));
    }
    let analysis: Option<(&LinearOperator, Dual<'_>)> = match &term {
        PdTerm::Analysis { op, weight } => {
            if !(*weight >= 0.0) {
                return Err(invalid("analysis weight must be non-negative"));
            }
            Some((*op, Dual::Clamp(*weight)))
        }
        PdTerm::Composite { op, g } => Some((*op, Dual::Moreau(*g))),
        PdTerm::Prox(_) => None,
    };
    if analysis.is_some_and(|(d, _)| d.cols() != n) {
        return Err(invalid("analysis operator has the wrong width"));
    }
    let norm_sq = stacked_norm_sq(a, analysis.map(|p| p.0));
    let (sigma, tau) = steps(norm_sq, config)?;

    let mut x = vec![0.0; n];
    let mut xbar = x.clone();
    let mut next = vec![0.0; n];
    let mut y1 = vec![0.0; a.rows()];
    let mut y2 = vec![0.0; analysis.map_or(0, |p| p.0.rows())];
    let mut ax = vec![0.0; a.rows()];
    let mut dx = vec![0.0; y2.len()];
    let mut back = vec![0.0; n];
    let mut back2 = vec![0.0; n];
    let mut trace = Vec::new();
    let unorm = norm2(u).max(f64::MIN_POSITIVE);
    let mut converged = false;
    let mut iterations = 0;
    let mut feasibility = f64::INFINITY;

    while iterations < config.max_iters {
        iterations += 1;
        a.apply(&xbar, &mut ax);
        for ((yi, axi), ui) in y1.iter_mut().zip(&ax).zip(u) {
            *yi += sigma * (axi - ui);
        }
        a.apply_adjoint(&y1, &mut back);
        if let Some((d, dual)) = &analysis {
            d.apply(&xbar, &mut dx);
            match dual {
                Dual::Clamp(w) => {
                    for (yi, di) in y2.iter_mut().zip(&dx) {
                        *yi = (*yi + sigma * di).clamp(-w, *w);
                    }
                }
                Dual::Moreau(g) => {
                    for (yi, di) in y2.iter_mut().zip(&dx) {
                        *yi += sigma * di;
                    }
                    let scaled: Vec<f64> = y2.iter().map(|v| v / sigma).collect();
                    g.prox(&scaled, 1.0 / sigma, &mut dx)?;
                    for (yi, pi) in y2.iter_mut().zip(&dx) {
                        *yi -= sigma * pi;
                    }
                }
            }
            d.apply_adjoint(&y2, &mut back2);
            back.iter_mut().zip(&back2).for_each(|(b, c)| *b += c);
        }
        for ((ni, xi), bi) in next.iter_mut().zip(&x).zip(&back) {
            *ni = xi - tau * bi;
        }
        if let PdTerm::Prox(g) = &term {
            let input = next.clone();
            g.prox(&input, tau, &mut next)?;
        }
        let change = dist2(&next, &x);
        for ((b, ni), xi) in xbar.iter_mut().zip(&next).zip(&x) {
            *b = 2.0 * ni - xi;
        }
        core::mem::swap(&mut x, &mut next);

        a.apply(&x, &mut ax);
        feasibility = ax
            .iter()
            .zip(u)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt();
        if config.trace {
            trace.push(penalty(&term, &x));
        }
        if feasibility <= config.tol * unorm
            && change <= config.tol * norm2(&x).max(f64::MIN_POSITIVE)
        {
            converged = true;
            break;
        }
    }
    Ok(SolveResult {
        objective: penalty(&term, &x),
        estimate: x.into(),
        iterations,
        residual: feasibility,
        converged,
        trace,
        latent: None,
        ridge_fallback: false,
    })
}

fn penalty(term: &PdTerm<'_>, x: &[f64]) -> f64 {
    match term {
        PdTerm::Prox(g) => g.penalty(x),
        PdTerm::Analysis { op, weight } => weight * norm1(&op.forward(x)),
        PdTerm::Composite { op, g } => g.penalty(&op.forward(x)),
    }
}

#[derive(Clone, Copy)]
enum Dual<'a> {
    Clamp(f64),
    Moreau(&'a dyn Prox),
}

fn steps(norm_sq: f64, config: &SolverConfig) -> Result<(f64, f64)> {
    let k = norm_sq.sqrt().max(f64::MIN_POSITIVE);
    let (sigma, tau) = match (config.sigma, config.tau) {
        (Some(s), Some(t)) => (s, t),
        (Some(s), None) => (s, 0.98 / (s * norm_sq.max(f64::MIN_POSITIVE))),
        (None, Some(t)) => (0.98 / (t * norm_sq.max(f64::MIN_POSITIVE)), t),
        (None, None) => (0.99 / k, 0.99 / k),
    };
    if !(sigma > 0.0) || !(tau > 0.0) {
        return Err(invalid("primal-dual steps must be positive"));
    }
    if sigma * tau * norm_sq > 1.0 + 1e-12 {
        return Err(invalid(
            "primal-dual steps violate sigma * tau * |K|^2 <= 1",
        ));
    }
    Ok((sigma, tau))
}

/// Power-iteration estimate of `‖[A; D]‖²`.
fn stacked_norm_sq(a: &LinearOperator, d: Option<&LinearOperator>) -> f64 {
    let n = a.cols();
    let mut rng = seeded(0x5eed_5678);
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let mut estimate = 0.0f64;
    let mut av = vec![0.0; a.rows()];
    let mut dv = vec![0.0; d.map_or(0, |d| d.rows())];
    let mut w = vec![0.0; n];
    let mut w2 = vec![0.0; n];
    for _ in 0..200 {
        let nv = norm2(&v);
        if nv == 0.0 {
            break;
        }
        v.iter_mut().for_each(|x| *x /= nv);
        a.apply(&v, &mut av);
        a.apply_adjoint(&av, &mut w);
        let mut q = dot(&av, &av);
        if let Some(d) = d {
            d.apply(&v, &mut dv);
            d.apply_adjoint(&dv, &mut w2);
            w.iter_mut().zip(&w2).for_each(|(p, r)| *p += r);
            q += dot(&dv, &dv);
        }
        estimate = estimate.max(q);
        core::mem::swap(&mut v, &mut w);
    }
    estimate
}
