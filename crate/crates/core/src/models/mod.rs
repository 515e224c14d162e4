//! Exact (and greedy) combinatorial projections onto discrete sparsity
//! models.
//!
//! All projections select only entries with a strictly positive objective
//! contribution unless the model forces otherwise (zero-valued ancestors in
//! a rooted-connected subtree), and break ties deterministically in favour of
//! the lexicographically smallest support.

mod dispersive;
mod groups;
mod ksparse;
mod tree;

pub use dispersive::{is_dispersive, project_dispersive, DispersiveModel};
pub use groups::{
    dp_loopless_groups, dp_loopless_groups_sparse, greedy_wmc, group_l0, minimum_group_cover,
    weighted_group_cover, GroupStructure, SparseGroupSelection, WmcSelection,
};
pub use ksparse::{project_ksparse, KSparse};
pub use tree::{project_rc_tree, Tree, TreeModel};

use crate::signal::{Signal, Support};

/// A sparsity model with a computable Euclidean projection, parameterized by
/// a budget so that solvers can ask for enlarged supports (e.g. `2k` in
/// CoSaMP).
pub trait ModelProjection {
    /// The model's nominal budget `k`.
    fn budget(&self) -> usize;

    /// Projection of `x` onto the model with budget `budget`.
    fn project_with_budget(&self, x: &[f64], budget: usize) -> (Signal, Support);

    fn project(&self, x: &[f64]) -> (Signal, Support) {
        self.project_with_budget(x, self.budget())
    }
}

/// Squared magnitudes, the per-index gain of keeping a coefficient.
pub(crate) fn energies(x: &[f64]) -> alloc::vec::Vec<f64> {
    x.iter().map(|v| v * v).collect()
}
