use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

use super::l1::shrink_block;
use super::Prox;
use crate::error::{invalid, Result};
use crate::models::Tree;

/// Replicates each coordinate once per group containing it, so that
/// overlapping groups become disjoint blocks of a latent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DuplicationMap {
    n: usize,
    /// Latent index → original index.
    origin: Vec<usize>,
    /// Group `g` owns latent indices `offsets[g]..offsets[g + 1]`.
    offsets: Vec<usize>,
    weights: Vec<f64>,
}

impl DuplicationMap {
    pub fn from_groups(n: usize, groups: &[Vec<usize>], weights: Vec<f64>) -> Result<Self> {
        if groups.len() != weights.len() {
            return Err(invalid("one weight per group required"));
        }
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(invalid("group weights must be finite and non-negative"));
        }
        let mut origin = Vec::new();
        let mut offsets = Vec::with_capacity(groups.len() + 1);
        offsets.push(0);
        for g in groups {
            for &i in g {
                if i >= n {
                    return Err(invalid(format!("group index {i} out of range")));
                }
                origin.push(i);
            }
            offsets.push(origin.len());
        }
        Ok(DuplicationMap {
            n,
            origin,
            offsets,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn latent_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn num_groups(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Latent index range of group `g`.
    pub fn block(&self, g: usize) -> core::ops::Range<usize> {
        self.offsets[g]..self.offsets[g + 1]
    }

    /// Original coordinates of group `g`.
    pub fn group(&self, g: usize) -> &[usize] {
        &self.origin[self.block(g)]
    }

    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    /// Number of latent copies of every original coordinate.
    pub fn multiplicity(&self) -> Vec<usize> {
        let mut m = alloc::vec![0; self.n];
        self.origin.iter().for_each(|&i| m[i] += 1);
        m
    }

    /// `v_l = x_{origin(l)}`
    pub fn replicate(&self, x: &[f64], v: &mut [f64]) {
        for (vl, &i) in v.iter_mut().zip(&self.origin) {
            *vl = x[i];
        }
    }

    /// `x_i = Σ_{origin(l) = i} v_l`
    pub fn sum_copies(&self, v: &[f64], x: &mut [f64]) {
        x.fill(0.0);
        for (vl, &i) in v.iter().zip(&self.origin) {
            x[i] += vl;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatentKind {
    /// One group per parent–child edge.
    ParentChild,
    /// One group per internal node: the node and all its children.
    Family,
}

fn level_weight(level: usize) -> f64 {
    let l = level.max(1) as f64;
    l * l
}

/// Latent groups on a tree, weighted by the squared level of the group's
/// topmost node (level 0 counted as 1).
pub fn build_latent(tree: &Tree, kind: LatentKind) -> DuplicationMap {
    let mut groups = Vec::new();
    let mut weights = Vec::new();
    for v in 0..tree.len() {
        match kind {
            LatentKind::ParentChild => {
                if let Some(p) = tree.parent(v) {
                    groups.push(alloc::vec![p, v]);
                    weights.push(level_weight(tree.level(p)));
                }
            }
            LatentKind::Family => {
                if !tree.children(v).is_empty() {
                    let mut g = alloc::vec![v];
                    g.extend_from_slice(tree.children(v));
                    groups.push(g);
                    weights.push(level_weight(tree.level(v)));
                }
            }
        }
    }
    DuplicationMap::from_groups(tree.len(), &groups, weights)
        .expect("tree groups are always in range")
}

/// Block soft-thresholding of every latent group with threshold `λ w_G`.
pub fn latent_group_prox(v: &[f64], map: &DuplicationMap, lambda: f64) -> Result<Vec<f64>> {
    if v.len() != map.latent_dim() {
        return Err(invalid("latent vector length does not match the map"));
    }
    if !(lambda >= 0.0) {
        return Err(invalid("lambda must be non-negative"));
    }
    let mut out = v.to_vec();
    if lambda != 0.0 {
        for g in 0..map.num_groups() {
            let block = map.block(g);
            let idx: Vec<usize> = block.clone().collect();
            shrink_block(v, &idx, lambda * map.weights[g], &mut out);
        }
    }
    Ok(out)
}

/// `λ Σ_G w_G ‖v_G‖₂` on the latent vector of a [`DuplicationMap`].
#[derive(Debug, Clone)]
pub struct LatentGroupLasso {
    pub map: DuplicationMap,
    pub lambda: f64,
}

impl Prox for LatentGroupLasso {
    fn penalty(&self, v: &[f64]) -> f64 {
        (0..self.map.num_groups())
            .map(|g| {
                let s: f64 = v[self.map.block(g)].iter().map(|a| a * a).sum();
                self.map.weights[g] * s.sqrt()
            })
            .sum::<f64>()
            * self.lambda
    }

    fn prox(&self, v: &[f64], step: f64, out: &mut [f64]) -> Result<()> {
        out.copy_from_slice(&latent_group_prox(v, &self.map, step * self.lambda)?);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latent_sizes_on_complete_tree() {
        let tree = Tree::complete(4, 4);
        assert_eq!(tree.len(), 85);
        assert_eq!(
            build_latent(&tree, LatentKind::ParentChild).latent_dim(),
            168
        );
        // 21 internal nodes, each with 4 children.
        assert_eq!(build_latent(&tree, LatentKind::Family).latent_dim(), 105);
    }

    #[test]
    fn latent_sizes_on_wavelet_layout() {
        let tree = Tree::wavelet_quadtree(32).unwrap();
        let n = 1024;
        assert_eq!(
            build_latent(&tree, LatentKind::ParentChild).latent_dim(),
            2 * (n - 1)
        );
        assert_eq!(
            build_latent(&tree, LatentKind::Family).latent_dim(),
            5 * n / 4 - 1
        );
    }

    #[test]
    fn single_node_has_no_pairs() {
        let tree = Tree::new(alloc::vec![None]).unwrap();
        assert_eq!(build_latent(&tree, LatentKind::ParentChild).num_groups(), 0);
    }

    #[test]
    fn level_weights() {
        let tree = Tree::complete(2, 3);
        let map = build_latent(&tree, LatentKind::ParentChild);
        // Root pairs get weight 1, level-1 pairs get 1, deeper pairs 4 and on.
        let mut w = map.weights().to_vec();
        w.sort_by(f64::total_cmp);
        assert_eq!(w, alloc::vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let deep = build_latent(&Tree::complete(2, 4), LatentKind::ParentChild);
        assert!(deep.weights().contains(&4.0));
    }

    #[test]
    fn replicate_and_sum() {
        let map = DuplicationMap::from_groups(
            3,
            &[alloc::vec![0, 1], alloc::vec![1, 2]],
            alloc::vec![1.0, 1.0],
        )
        .unwrap();
        let mut v = [0.0; 4];
        map.replicate(&[1.0, 2.0, 3.0], &mut v);
        assert_eq!(v, [1.0, 2.0, 2.0, 3.0]);
        let mut x = [0.0; 3];
        map.sum_copies(&v, &mut x);
        assert_eq!(x, [1.0, 4.0, 3.0]);
        assert_eq!(map.multiplicity(), alloc::vec![1, 2, 1]);
    }

    #[test]
    fn latent_prox_delegates() {
        let map = DuplicationMap::from_groups(2, &[alloc::vec![0, 1]], alloc::vec![1.0]).unwrap();
        let y = latent_group_prox(&[3.0, 4.0], &map, 1.0).unwrap();
        assert!((y[0] - 2.4).abs() < 1e-15 && (y[1] - 3.2).abs() < 1e-15);
        assert_eq!(
            latent_group_prox(&[0.3, 0.4], &map, 1.0).unwrap(),
            alloc::vec![0.0, 0.0]
        );
        assert_eq!(
            latent_group_prox(&[3.0, 4.0], &map, 0.0).unwrap(),
            alloc::vec![3.0, 4.0]
        );
    }
}
