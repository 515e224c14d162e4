use alloc::vec;
use alloc::vec::Vec;

use super::{check_config, lipschitz_of, LeastSquares, SmoothObjective, SolveResult, SolverConfig};
use crate::error::{invalid, Error, Result};
use crate::linalg::{dist2, dot, norm2};
use crate::models::ModelProjection;
use crate::operator::LinearOperator;

/// Projected gradient on `½‖u − Ax‖²`:
/// `x ← P(x + μ Aᵀ(u − Ax))`, stopping once `‖Δx‖ < tol · ‖x‖`.
pub fn iht(
    a: &LinearOperator,
    u: &[f64],
    model: &dyn ModelProjection,
    config: &SolverConfig,
    x0: &[f64],
) -> Result<SolveResult> {
    check_config(config)?;
    if u.len() != a.rows() || x0.len() != a.cols() {
        return Err(invalid(
            "dimension mismatch between operator, data and start",
        ));
    }
    let mu = match (config.normalized, config.step) {
        (true, _) => 0.0,
        (false, Some(s)) => s,
        (false, None) => 1.0 / lipschitz_of(a, config)?,
    };
    let f = LeastSquares { a, u };
    let mut x = model.project(x0).0.into_inner();
    let mut grad = vec![0.0; x.len()];
    let initial = f.value(&x).max(f.value(&vec![0.0; x.len()]));
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    let mut change = 0.0;
    while iterations < config.max_iters {
        iterations += 1;
        let obj = f.value_and_gradient(&x, &mut grad);
        if obj > 1e6 * initial.max(f64::MIN_POSITIVE) {
            return Err(Error::Diverged {
                iteration: iterations,
                objective: obj,
            });
        }
        let next = if config.normalized {
            normalized_step(a, model, &x, &grad)
        } else {
            let step: Vec<f64> = x.iter().zip(&grad).map(|(xi, g)| xi - mu * g).collect();
            model.project(&step).0.into_inner()
        };
        change = dist2(&next, &x);
        let scale = norm2(&next).max(norm2(&x));
        x = next;
        if config.trace {
            trace.push(f.value(&x));
        }
        if change <= config.tol * scale || scale == 0.0 {
            converged = true;
            break;
        }
    }
    Ok(SolveResult {
        objective: f.value(&x),
        estimate: x.into(),
        iterations,
        residual: change,
        converged,
        trace,
        latent: None,
        ridge_fallback: false,
    })
}

/// One normalized-IHT step. `grad` is `∇f(x) = −Aᵀ(u − Ax)`.
fn normalized_step(
    a: &LinearOperator,
    model: &dyn ModelProjection,
    x: &[f64],
    grad: &[f64],
) -> Vec<f64> {
    let n = x.len();
    let descent: Vec<f64> = grad.iter().map(|g| -g).collect();
    let support: Vec<usize> = if x.iter().any(|v| *v != 0.0) {
        (0..n).filter(|&i| x[i] != 0.0).collect()
    } else {
        model.project(&descent).1.indices().to_vec()
    };
    let mut restricted = vec![0.0; n];
    for &i in &support {
        restricted[i] = descent[i];
    }
    let num = dot(&restricted, &restricted);
    let image = a.forward(&restricted);
    let den = dot(&image, &image);
    if num == 0.0 || den == 0.0 {
        return x.to_vec();
    }
    let mut mu = num / den;
    loop {
        let trial: Vec<f64> = x.iter().zip(&descent).map(|(xi, d)| xi + mu * d).collect();
        let (next, next_support) = model.project(&trial);
        let next = next.into_inner();
        if next_support.indices() == &support[..] {
            return next;
        }
        let diff: Vec<f64> = next.iter().zip(x).map(|(p, q)| p - q).collect();
        let image = a.forward(&diff);
        let curvature = dot(&image, &image);
        if curvature == 0.0 || mu <= 0.99 * dot(&diff, &diff) / curvature || mu < 1e-300 {
            return next;
        }
        mu /= 2.0;
    }
}
