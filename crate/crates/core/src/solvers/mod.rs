//! First-order recovery algorithms: projected gradient (IHT), model-based
//! CoSaMP, ISTA/FISTA, Chambolle–Pock primal-dual pursuit and consensus
//! ADMM over duplicated latent variables.

mod admm;
mod cosamp;
mod iht;
mod primal_dual;
mod proximal;

pub use admm::{admm_duplication, admm_replicated};
pub use cosamp::model_cosamp;
pub use iht::iht;
pub use primal_dual::{chambolle_pock, PdTerm};
pub use proximal::{fista, ista};

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::dot;
use crate::operator::LinearOperator;
use crate::signal::Signal;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Gradient step `μ`; defaults to `1/L`.
    pub step: Option<f64>,
    /// IHT only: choose `μ` every iteration from the gradient restricted to
    /// the current support, shrinking it when the support would change
    /// faster than the restricted curvature allows. Overrides `step`.
    pub normalized: bool,
    /// Lipschitz constant of `∇f`; estimated by power iteration when absent.
    pub lipschitz: Option<f64>,
    /// Primal-dual steps; default `σ = τ = 0.99/‖K‖`.
    pub sigma: Option<f64>,
    pub tau: Option<f64>,
    /// Relative stopping tolerance.
    pub tol: f64,
    /// Function-value restart for FISTA.
    pub restart: bool,
    /// Initial ADMM penalty, rebalanced by factors of two.
    pub rho: f64,
    /// Record the objective after every iteration.
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 1000,
            step: None,
            normalized: false,
            lipschitz: None,
            sigma: None,
            tau: None,
            tol: 1e-6,
            restart: true,
            rho: 1.0,
            trace: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub estimate: Signal,
    pub iterations: usize,
    /// Final objective value (data fit plus penalty where applicable).
    pub objective: f64,
    /// Final residual: `‖Ax − u‖` for pursuit, the consensus residual for
    /// ADMM, the iterate change otherwise.
    pub residual: f64,
    pub converged: bool,
    pub trace: Vec<f64>,
    /// Latent variables of ADMM duplication.
    pub latent: Option<Vec<f64>>,
    /// Set when a least-squares solve fell back to ridge regularization.
    pub ridge_fallback: bool,
}

/// A differentiable data term.
pub trait SmoothObjective {
    fn dim(&self) -> usize;
    /// Returns `f(x)` and writes `∇f(x)` into `grad`.
    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64;
    fn value(&self, x: &[f64]) -> f64 {
        let mut g = vec![0.0; x.len()];
        self.value_and_gradient(x, &mut g)
    }
}

/// `½‖u − Ax‖²`
#[derive(Debug, Clone, Copy)]
pub struct LeastSquares<'a> {
    pub a: &'a LinearOperator,
    pub u: &'a [f64],
}

impl LeastSquares<'_> {
    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        let mut r = self.a.forward(x);
        r.iter_mut().zip(self.u).for_each(|(ri, ui)| *ri -= ui);
        r
    }
}

impl SmoothObjective for LeastSquares<'_> {
    fn dim(&self) -> usize {
        self.a.cols()
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let r = self.residual(x);
        self.a.apply_adjoint(&r, grad);
        0.5 * dot(&r, &r)
    }

    fn value(&self, x: &[f64]) -> f64 {
        let r = self.residual(x);
        0.5 * dot(&r, &r)
    }
}

fn lipschitz_of(a: &LinearOperator, config: &SolverConfig) -> crate::Result<f64> {
    match config.lipschitz {
        Some(l) if l > 0.0 && l.is_finite() => Ok(l),
        Some(_) => Err(crate::error::invalid("Lipschitz constant must be positive")),
        None => {
            let l = crate::operator::lipschitz_estimate(a, 100);
            Ok(if l > 0.0 { l } else { 1.0 })
        }
    }
}

fn check_config(config: &SolverConfig) -> crate::Result<()> {
    if !(config.tol > 0.0) {
        return Err(crate::error::invalid("tolerance must be positive"));
    }
    if config.step.is_some_and(|s| !(s > 0.0)) || !(config.rho > 0.0) {
        return Err(crate::error::invalid("steps and rho must be positive"));
    }
    Ok(())
}
