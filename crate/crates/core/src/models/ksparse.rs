use alloc::vec::Vec;

use super::ModelProjection;
use crate::signal::{Signal, Support};

/// Keeps the `k` largest-magnitude entries of `x`; ties go to the lowest
/// index.
pub fn project_ksparse(x: &[f64], k: usize) -> Signal {
    ksparse_support(x, k).1
}

fn ksparse_support(x: &[f64], k: usize) -> (Support, Signal) {
    let mut order: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0.0).collect();
    // stable: equal magnitudes keep index order
    order.sort_by(|&a, &b| x[b].abs().total_cmp(&x[a].abs()));
    order.truncate(k);
    order.sort_unstable();
    let support = Support::from_sorted_unchecked(x.len(), order);
    let signal = Signal::restricted(x, &support);
    (support, signal)
}

/// The plain `k`-sparse model `Σ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KSparse {
    pub k: usize,
}

impl ModelProjection for KSparse {
    fn budget(&self) -> usize {
        self.k
    }

    fn project_with_budget(&self, x: &[f64], budget: usize) -> (Signal, Support) {
        let (s, x) = ksparse_support(x, budget);
        (x, s)
    }
}
