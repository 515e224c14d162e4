use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::l1::shrink_block;
use super::Prox;
use crate::error::{invalid, Result};
use crate::models::Tree;
use crate::signal::Signal;

/// `λ Σ_G w_G ‖x_G‖₂` over a laminar (nested-or-disjoint) group family.
#[derive(Debug, Clone)]
pub struct HierarchicalGroupLasso {
    /// Groups ordered so that each appears after every group it contains.
    groups: Vec<Vec<usize>>,
    weights: Vec<f64>,
    lambda: f64,
}

impl HierarchicalGroupLasso {
    pub fn new(n: usize, groups: Vec<Vec<usize>>, weights: Vec<f64>, lambda: f64) -> Result<Self> {
        if groups.len() != weights.len() {
            return Err(invalid("one weight per group required"));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) || !(lambda >= 0.0) {
            return Err(invalid("weights and lambda must be non-negative"));
        }
        let mut order: Vec<usize> = (0..groups.len()).collect();
        order.sort_by_key(|&g| groups[g].len());
        check_laminar(n, &groups, &order)?;
        let weights = order.iter().map(|&g| weights[g]).collect();
        let mut groups = groups;
        let groups = order
            .iter()
            .map(|&g| core::mem::take(&mut groups[g]))
            .collect();
        Ok(HierarchicalGroupLasso {
            groups,
            weights,
            lambda,
        })
    }

    /// Descendant groups of a tree, one weight per node.
    pub fn on_tree(tree: &Tree, weights: Vec<f64>, lambda: f64) -> Result<Self> {
        HierarchicalGroupLasso::new(tree.len(), tree.descendant_groups(), weights, lambda)
    }
}

/// Walks groups from largest to smallest; each group must sit inside the
/// most recent group that claimed its elements.
fn check_laminar(n: usize, groups: &[Vec<usize>], ascending: &[usize]) -> Result<()> {
    let mut owner = vec![usize::MAX; n];
    for &g in ascending.iter().rev() {
        let group = &groups[g];
        let Some(&first) = group.first() else {
            continue;
        };
        if group.iter().any(|&i| i >= n) {
            return Err(invalid(format!("group {g} has an index out of range")));
        }
        let parent = owner[first];
        if group.iter().any(|&i| owner[i] != parent) {
            return Err(invalid("groups must be nested or disjoint"));
        }
        for &i in group {
            if owner[i] == g {
                return Err(invalid(format!("group {g} repeats an index")));
            }
            owner[i] = g;
        }
    }
    Ok(())
}

impl Prox for HierarchicalGroupLasso {
    fn penalty(&self, x: &[f64]) -> f64 {
        self.groups
            .iter()
            .zip(&self.weights)
            .map(|(g, w)| w * g.iter().map(|&i| x[i] * x[i]).sum::<f64>().sqrt())
            .sum::<f64>()
            * self.lambda
    }

    fn prox(&self, x: &[f64], step: f64, out: &mut [f64]) -> Result<()> {
        out.copy_from_slice(x);
        let t = step * self.lambda;
        if t == 0.0 {
            return Ok(());
        }
        let mut scratch = out.to_vec();
        for (g, w) in self.groups.iter().zip(&self.weights) {
            shrink_block(&scratch, g, t * w, out);
            for &i in g {
                scratch[i] = out[i];
            }
        }
        Ok(())
    }
}

/// Exact prox of the hierarchical group lasso with descendant groups of
/// `tree`, composing group shrinkages from the leaves up.
pub fn hgl_prox(x: &[f64], tree: &Tree, lambda: f64, weights: &[f64]) -> Result<Signal> {
    if x.len() != tree.len() {
        return Err(invalid("signal length differs from the tree size"));
    }
    let pen = HierarchicalGroupLasso::on_tree(tree, weights.to_vec(), lambda)?;
    let mut out = vec![0.0; x.len()];
    pen.prox(x, 1.0, &mut out)?;
    Ok(Signal::from(out))
}

/// [`hgl_prox`] for an explicit laminar group family.
pub fn hgl_prox_groups(
    x: &[f64],
    groups: Vec<Vec<usize>>,
    lambda: f64,
    weights: Vec<f64>,
) -> Result<Signal> {
    let pen = HierarchicalGroupLasso::new(x.len(), groups, weights, lambda)?;
    let mut out = vec![0.0; x.len()];
    pen.prox(x, 1.0, &mut out)?;
    Ok(Signal::from(out))
}
