//! Fujishige–Wolfe minimum-norm-point algorithm over a base polytope given
//! by its greedy linear-optimization oracle.

use alloc::vec;
use alloc::vec::Vec;

use super::SetFunction;
use crate::linalg::{dot, solve_dense};

/// Access to the vertices of a base polytope `B(F)`.
pub trait BaseOracle {
    fn dim(&self) -> usize;
    /// Greedy vertex for the given element order.
    fn greedy_vertex(&self, order: &[usize], out: &mut [f64]);
}

impl BaseOracle for SetFunction {
    fn dim(&self) -> usize {
        self.n()
    }

    fn greedy_vertex(&self, order: &[usize], out: &mut [f64]) {
        SetFunction::greedy_vertex(self, order, out)
    }
}

/// Base polytope of `scale · R − shift(·)`.
pub(crate) struct ShiftedScaled<'a> {
    pub r: &'a SetFunction,
    pub scale: f64,
    pub shift: &'a [f64],
}

impl BaseOracle for ShiftedScaled<'_> {
    fn dim(&self) -> usize {
        self.r.n()
    }

    fn greedy_vertex(&self, order: &[usize], out: &mut [f64]) {
        self.r.greedy_vertex(order, out);
        for (o, s) in out.iter_mut().zip(self.shift) {
            *o = self.scale * *o - s;
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinNormOptions {
    pub max_iters: usize,
    /// Relative tolerance on Wolfe's gap `‖x‖² − ⟨x, q⟩`.
    pub tol: f64,
    /// Stop as soon as the minimization duality gap drops below this value.
    pub sfm_tol: Option<f64>,
}

impl Default for MinNormOptions {
    fn default() -> Self {
        MinNormOptions {
            max_iters: 10_000,
            tol: 1e-12,
            sfm_tol: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinNormPoint {
    /// Final iterate, a point of the base polytope.
    pub point: Vec<f64>,
    /// Best sublevel set `{x < θ}` seen over all iterations.
    pub best_set: Vec<bool>,
    pub best_value: f64,
    /// Largest certified lower bound `x⁻(𝒩)` on `min F`.
    pub lower_bound: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `‖x‖²` over the base polytope.
pub fn min_norm_point<O: BaseOracle + ?Sized>(oracle: &O, opts: &MinNormOptions) -> MinNormPoint {
    let n = oracle.dim();
    let mut order: Vec<usize> = (0..n).collect();
    let mut q = vec![0.0; n];
    oracle.greedy_vertex(&order, &mut q);
    let mut points = vec![q.clone()];
    let mut lambda = vec![1.0];
    let mut x = q.clone();
    let mut scale = dot(&q, &q).max(1e-300);

    let mut best_set = vec![false; n];
    let mut best_value = 0.0;
    let mut lower_bound = f64::NEG_INFINITY;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iters {
        iterations += 1;
        order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
        oracle.greedy_vertex(&order, &mut q);
        scale = scale.max(dot(&q, &q));

        // Prefix sums of q along the order evaluate F on every sublevel set.
        let mut acc = 0.0;
        let mut best_prefix = None;
        for (t, &i) in order.iter().enumerate() {
            acc += q[i];
            if acc < best_value {
                best_value = acc;
                best_prefix = Some(t + 1);
            }
        }
        if let Some(len) = best_prefix {
            best_set.fill(false);
            order[..len].iter().for_each(|&i| best_set[i] = true);
        }
        lower_bound = lower_bound.max(x.iter().map(|v| v.min(0.0)).sum());

        if opts
            .sfm_tol
            .is_some_and(|tol| best_value - lower_bound <= tol)
        {
            converged = true;
            break;
        }
        let gap = dot(&x, &x) - dot(&x, &q);
        if gap <= opts.tol * scale {
            converged = true;
            break;
        }
        if points.iter().any(|p| p == &q) {
            converged = true;
            break;
        }
        points.push(q.clone());
        lambda.push(0.0);

        loop {
            let Some(alpha) = affine_minimizer(&points) else {
                points.pop();
                lambda.pop();
                converged = true;
                break;
            };
            if alpha.iter().all(|a| *a > 1e-15) {
                lambda = alpha;
                break;
            }
            let mut theta = 1.0f64;
            let mut leaving = 0;
            for (i, (&a, &l)) in alpha.iter().zip(&lambda).enumerate() {
                if a <= 1e-15 {
                    let t = l / (l - a);
                    if t < theta {
                        theta = t;
                        leaving = i;
                    }
                }
            }
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = theta * a + (1.0 - theta) * *l;
            }
            lambda[leaving] = 0.0;
            let mut i = 0;
            while i < points.len() {
                if lambda[i] <= 1e-15 && points.len() > 1 {
                    points.swap_remove(i);
                    lambda.swap_remove(i);
                } else {
                    i += 1;
                }
            }
            let total: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= total);
        }
        let previous = dot(&x, &x);
        x.fill(0.0);
        for (p, l) in points.iter().zip(&lambda) {
            for (xi, pi) in x.iter_mut().zip(p) {
                *xi += l * pi;
            }
        }
        // The norm strictly decreases every major cycle in exact arithmetic;
        // once it stops, further cycles only shuffle rounding error.
        if dot(&x, &x) >= previous - 4.0 * f64::EPSILON * scale {
            converged = true;
        }
        if converged {
            break;
        }
    }
    if opts.sfm_tol.is_none() {
        lower_bound = lower_bound.max(x.iter().map(|v| v.min(0.0)).sum());
    }
    MinNormPoint {
        point: x,
        best_set,
        best_value,
        lower_bound,
        iterations,
        converged,
    }
}

/// Minimum-norm point of the affine hull of `points` as affine weights.
fn affine_minimizer(points: &[Vec<f64>]) -> Option<Vec<f64>> {
    let r = points.len();
    if r == 1 {
        return Some(vec![1.0]);
    }
    let dim = r + 1;
    let mut a = vec![0.0; dim * dim];
    let mut gmax = 0.0f64;
    for i in 0..r {
        for j in i..r {
            let g = dot(&points[i], &points[j]);
            a[i * dim + j] = g;
            a[j * dim + i] = g;
            gmax = gmax.max(g.abs());
        }
    }
    let c = gmax.max(1e-300);
    for i in 0..r {
        a[i * dim + r] = c;
        a[r * dim + i] = c;
    }
    let mut b = vec![0.0; dim];
    b[r] = c;
    let mut sol = solve_dense(a, b)?;
    sol.truncate(r);
    Some(sol)
}
