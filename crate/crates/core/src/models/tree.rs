use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{energies, ModelProjection};
use crate::error::{invalid, Result};
use crate::signal::{Signal, Support};

/// A rooted forest over `0..n` given by parent links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
    depth: Vec<usize>,
    /// Children before parents.
    postorder: Vec<usize>,
}

impl Tree {
    /// Validates the parent links (indices in range, no cycles).
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None => roots.push(v),
                Some(p) if p >= n => {
                    return Err(invalid(format!("node {v} has out-of-range parent {p}")))
                }
                Some(p) if p == v => return Err(invalid(format!("node {v} is its own parent"))),
                Some(p) => children[p].push(v),
            }
        }
        let mut depth = vec![usize::MAX; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack: Vec<usize> = roots.iter().rev().copied().collect();
        for &r in &roots {
            depth[r] = 0;
        }
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &c in children[v].iter().rev() {
                depth[c] = depth[v] + 1;
                stack.push(c);
            }
        }
        if preorder.len() != n {
            return Err(invalid("parent links contain a cycle"));
        }
        let postorder = preorder.into_iter().rev().collect();
        Ok(Tree {
            parent,
            children,
            roots,
            depth,
            postorder,
        })
    }

    /// The wavelet quad-tree over a `p × p` Mallat coefficient layout.
    pub fn wavelet_quadtree(p: usize) -> Result<Self> {
        Tree::new(crate::operator::haar::quadtree_parents(p)?)
    }

    /// Complete `arity`-ary tree with `levels` levels, nodes numbered in
    /// breadth-first order.
    pub fn complete(arity: usize, levels: usize) -> Self {
        let mut parent = Vec::new();
        let mut level_start = 0;
        let mut level_len = 1;
        for l in 0..levels {
            for i in 0..level_len {
                parent.push(if l == 0 {
                    None
                } else {
                    Some(level_start - level_len / arity + i / arity)
                });
            }
            level_start += level_len;
            level_len *= arity;
        }
        Tree::new(parent).expect("complete tree is well formed")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Distance from the node's root (roots are level 0).
    pub fn level(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn postorder(&self) -> &[usize] {
        &self.postorder
    }

    /// For each node, the sorted set of the node and all its descendants.
    pub fn descendant_groups(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &v in &self.postorder {
            let mut g = vec![v];
            for &c in &self.children[v] {
                g.extend_from_slice(&groups[c]);
            }
            g.sort_unstable();
            groups[v] = g;
        }
        groups
    }

    /// True if every member's parent is also a member.
    pub fn is_rooted_connected(&self, support: &Support) -> bool {
        support
            .indices()
            .iter()
            .all(|&v| self.parent[v].is_none_or(|p| support.contains(p)))
    }
}

/// Rooted-connected subtrees (a union of them for forests) of at most `k`
/// nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeModel {
    pub tree: Tree,
    pub k: usize,
}

impl TreeModel {
    pub fn new(parent: Vec<Option<usize>>, k: usize) -> Result<Self> {
        Ok(TreeModel {
            tree: Tree::new(parent)?,
            k,
        })
    }
}

/// Exact projection onto the rooted-connected model: maximizes `Σ_{i∈S} x_i²`
/// over rooted-connected `S` with `|S| ≤ k` by a tree-knapsack dynamic
/// program. Ties prefer the smallest support, then the lexicographically
/// smallest.
pub fn project_rc_tree(x: &[f64], model: &TreeModel) -> (Signal, Support) {
    let support = rc_support(x, &model.tree, model.k);
    (Signal::restricted(x, &support), support)
}

impl ModelProjection for TreeModel {
    fn budget(&self) -> usize {
        self.k
    }

    fn project_with_budget(&self, x: &[f64], budget: usize) -> (Signal, Support) {
        let support = rc_support(x, &self.tree, budget);
        (Signal::restricted(x, &support), support)
    }
}

/// Knapsack tables with split back-pointers. `tables[v][j]` is the best
/// energy of a selection of size `j` inside the subtree of `v` that contains
/// `v` (for `j ≥ 1`). Node `n` is a virtual super-root over the forest roots
/// that never joins the selection itself.
struct TreeKnapsack<'a> {
    tree: &'a Tree,
    splits: Vec<Vec<Vec<usize>>>,
}

impl TreeKnapsack<'_> {
    fn children_of(&self, v: usize) -> &[usize] {
        if v == self.tree.len() {
            self.tree.roots()
        } else {
            self.tree.children(v)
        }
    }

    /// Nodes of the size-`size` selection of node `v` restricted to its first
    /// `steps` children.
    fn collect(&self, v: usize, steps: usize, size: usize, out: &mut Vec<usize>) {
        let mut stack = vec![(v, steps, size)];
        while let Some((v, steps, size)) = stack.pop() {
            if size == 0 {
                continue;
            }
            if steps == 0 {
                debug_assert!(v < self.tree.len() && size == 1);
                out.push(v);
                continue;
            }
            let a = self.splits[v][steps - 1][size];
            let child = self.children_of(v)[steps - 1];
            stack.push((child, self.children_of(child).len(), a));
            stack.push((v, steps - 1, size - a));
        }
    }

    fn candidate_set(&self, v: usize, step: usize, size: usize, a: usize) -> Vec<usize> {
        let mut set = Vec::with_capacity(size);
        self.collect(v, step, size - a, &mut set);
        let child = self.children_of(v)[step];
        self.collect(child, self.children_of(child).len(), a, &mut set);
        set.sort_unstable();
        set
    }
}

fn rc_support(x: &[f64], tree: &Tree, k: usize) -> Support {
    let n = tree.len();
    assert_eq!(x.len(), n, "signal length must match tree size");
    let gain = energies(x);
    let mut dp = TreeKnapsack {
        tree,
        splits: vec![Vec::new(); n + 1],
    };
    let mut tables: Vec<Vec<f64>> = vec![Vec::new(); n + 1];

    let order = tree.postorder().iter().copied().chain(core::iter::once(n));
    for v in order {
        let is_virtual = v == n;
        let mut acc: Vec<f64> = if is_virtual || k == 0 {
            vec![0.0]
        } else {
            vec![0.0, gain[v]]
        };
        let kids: Vec<usize> = dp.children_of(v).to_vec();
        for (step, &c) in kids.iter().enumerate() {
            let child = core::mem::take(&mut tables[c]);
            let len = (acc.len() - 1 + child.len() - 1).min(k) + 1;
            let mut next = vec![f64::NEG_INFINITY; len];
            let mut split = vec![0usize; len];
            for (j, &base) in acc.iter().enumerate() {
                if base == f64::NEG_INFINITY {
                    continue;
                }
                let max_a = if j == 0 && !is_virtual {
                    0
                } else {
                    child.len() - 1
                };
                for (a, &cv) in child.iter().enumerate().take(max_a + 1) {
                    let s = j + a;
                    if s >= len {
                        break;
                    }
                    let cand = base + cv;
                    let replace = match cand.partial_cmp(&next[s]) {
                        Some(Ordering::Greater) => true,
                        Some(Ordering::Equal) => {
                            // exact tie: lexicographically smaller node set wins
                            let new_set = dp.candidate_set(v, step, s, a);
                            let cur_set = dp.candidate_set(v, step, s, split[s]);
                            new_set < cur_set
                        }
                        _ => false,
                    };
                    if replace {
                        next[s] = cand;
                        split[s] = a;
                    }
                }
            }
            dp.splits[v].push(split);
            acc = next;
        }
        tables[v] = acc;
    }

    let root = &tables[n];
    let mut best = 0;
    for j in 1..root.len() {
        if root[j] > root[best] {
            best = j;
        }
    }
    let mut nodes = Vec::with_capacity(best);
    dp.collect(n, dp.children_of(n).len(), best, &mut nodes);
    nodes.sort_unstable();
    Support::from_sorted_unchecked(n, nodes)
}
