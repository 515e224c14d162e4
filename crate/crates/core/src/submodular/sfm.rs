use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::maxflow::FlowNetwork;
use super::minnorm::{min_norm_point, MinNormOptions};
use super::{CutFunction, ModularFunction, SetFunction};
use crate::error::{Error, Result};
use crate::signal::Support;

/// A minimizer of a set function together with its value.
#[derive(Debug, Clone, PartialEq)]
pub struct SfmSolution {
    pub set: Support,
    pub value: f64,
}

/// Largest ground set accepted by [`sfm_bruteforce`].
pub const MAX_BRUTEFORCE: usize = 20;

/// Exhaustive minimization. Among exact ties the smaller set wins, then the
/// lexicographically smaller index list.
pub fn sfm_bruteforce(r: &SetFunction) -> Result<SfmSolution> {
    let n = r.n();
    if n > MAX_BRUTEFORCE {
        return Err(Error::Capability(format!(
            "exhaustive minimization supports n <= {MAX_BRUTEFORCE}, got {n}"
        )));
    }
    let mut mask = vec![false; n];
    let mut best_value = f64::INFINITY;
    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::with_capacity(n);
    for s in 0..1usize << n {
        current.clear();
        for (i, m) in mask.iter_mut().enumerate() {
            *m = s >> i & 1 == 1;
            if *m {
                current.push(i);
            }
        }
        let v = r.eval(&mask);
        let better = v < best_value
            || (v == best_value
                && (current.len(), current.as_slice()) < (best.len(), best.as_slice()));
        if better {
            best_value = v;
            best.clone_from(&current);
        }
    }
    Ok(SfmSolution {
        set: Support::from_sorted_unchecked(n, best),
        value: best_value,
    })
}

/// Exact minimization of `cut(S) + modular(S)` through one s-t max-flow.
/// Returns the inclusion-minimal minimizer.
pub fn sfm_graphcut(cut: &CutFunction, modular: &ModularFunction) -> Result<SfmSolution> {
    let n = cut.n();
    if modular.weights.len() != n {
        return Err(Error::InvalidParameter(format!(
            "modular part has {} weights for {n} elements",
            modular.weights.len()
        )));
    }
    let (s, t) = (n, n + 1);
    let mut g = FlowNetwork::new(n + 2);
    for &(i, j, w) in cut.edges() {
        g.add_arc(i, j, w, w);
    }
    for (i, &w) in modular.weights.iter().enumerate() {
        if w < 0.0 {
            g.add_arc(s, i, -w, 0.0);
        } else if w > 0.0 {
            g.add_arc(i, t, w, 0.0);
        }
    }
    g.max_flow(s, t);
    let side = g.source_side(s);
    let mask = &side[..n];
    Ok(SfmSolution {
        set: Support::from_mask(mask),
        value: cut.eval(mask) + modular.eval(mask),
    })
}

/// Minimization through the minimum-norm base: the set `{x⋆ < 0}` minimizes
/// `R`. Stops once the duality gap `R(S) − x⁻(𝒩)` falls below `tol`.
pub fn sfm_minnorm(r: &SetFunction, tol: f64, max_iters: usize) -> Result<SfmSolution> {
    let opts = MinNormOptions {
        max_iters,
        sfm_tol: Some(tol),
        ..MinNormOptions::default()
    };
    let out = min_norm_point(r, &opts);
    if !out.converged {
        return Err(Error::NotConverged {
            iterations: out.iterations,
            gap: out.best_value - out.lower_bound,
            best: out.point,
        });
    }
    Ok(SfmSolution {
        set: Support::from_mask(&out.best_set),
        value: out.best_value,
    })
}
