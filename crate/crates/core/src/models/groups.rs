//! Group-sparsity models: weighted maximum coverage (greedy and exact on
//! loopless structures), its element-sparse variant, and the group ℓ0
//! "norm" (minimum group cover).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{invalid, Error, Result};
use crate::signal::Support;

/// A collection of (possibly overlapping) index groups over `0..n` with
/// non-negative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupStructure {
    n: usize,
    groups: Vec<Vec<usize>>,
    weights: Vec<f64>,
    /// For each element, the groups containing it (ascending).
    membership: Vec<Vec<usize>>,
}

/// Group graph of a loopless structure: per-group private elements and, for
/// each adjacent pair, the elements they share.
struct GroupGraph {
    private: Vec<Vec<usize>>,
    adjacency: Vec<Vec<(usize, usize)>>, // (neighbour, edge id)
    shared: Vec<Vec<usize>>,             // edge id -> elements
}

/// A rooted spanning forest of the group graph.
struct Forest {
    /// Component roots with their nodes in post-order.
    components: Vec<Vec<usize>>,
    /// (parent, edge id) for non-root nodes.
    up: Vec<Option<(usize, usize)>>,
    children: Vec<Vec<usize>>,
}

impl GroupStructure {
    pub fn new(n: usize, groups: Vec<Vec<usize>>, weights: Vec<f64>) -> Result<Self> {
        if groups.len() != weights.len() {
            return Err(invalid("one weight per group required"));
        }
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(invalid("group weights must be finite and non-negative"));
        }
        let mut normalized = Vec::with_capacity(groups.len());
        let mut membership = vec![Vec::new(); n];
        for (g, members) in groups.into_iter().enumerate() {
            let support =
                Support::new(n, members).map_err(|e| invalid(format!("group {g}: {e}")))?;
            if support.is_empty() {
                return Err(invalid(format!("group {g} is empty")));
            }
            for &i in support.indices() {
                membership[i].push(g);
            }
            normalized.push(support.indices().to_vec());
        }
        Ok(GroupStructure {
            n,
            groups: normalized,
            weights,
            membership,
        })
    }

    pub fn unweighted(n: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let m = groups.len();
        GroupStructure::new(n, groups, vec![1.0; m])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, g: usize) -> &[usize] {
        &self.groups[g]
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn membership(&self, i: usize) -> &[usize] {
        &self.membership[i]
    }

    /// Row-major `n × M` bi-adjacency matrix (element, group).
    pub fn biadjacency(&self) -> Vec<u8> {
        let m = self.len();
        let mut a = vec![0u8; self.n * m];
        for (i, gs) in self.membership.iter().enumerate() {
            for &g in gs {
                a[i * m + g] = 1;
            }
        }
        a
    }

    /// Loopless pairwise overlapping: every element lies in at most two
    /// groups and the group-intersection graph is a forest.
    pub fn is_loopless(&self) -> bool {
        self.group_graph().is_ok()
    }

    fn group_graph(&self) -> Result<GroupGraph> {
        let m = self.len();
        let mut private = vec![Vec::new(); m];
        let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut shared: Vec<Vec<usize>> = Vec::new();
        for (i, gs) in self.membership.iter().enumerate() {
            match gs.as_slice() {
                [] => {}
                [g] => private[*g].push(i),
                [g, h] => {
                    let id = *edge_ids.entry((*g, *h)).or_insert_with(|| {
                        shared.push(Vec::new());
                        shared.len() - 1
                    });
                    shared[id].push(i);
                }
                _ => {
                    return Err(Error::ModelViolation(format!(
                        "element {i} belongs to {} groups",
                        gs.len()
                    )))
                }
            }
        }
        let mut uf = UnionFind::new(m);
        let mut adjacency = vec![Vec::new(); m];
        for (&(g, h), &id) in &edge_ids {
            if !uf.union(g, h) {
                return Err(Error::ModelViolation(format!(
                    "group graph has a cycle through groups {g} and {h}"
                )));
            }
            adjacency[g].push((h, id));
            adjacency[h].push((g, id));
        }
        Ok(GroupGraph {
            private,
            adjacency,
            shared,
        })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl GroupGraph {
    fn forest(&self) -> Forest {
        let m = self.private.len();
        let mut seen = vec![false; m];
        let mut up = vec![None; m];
        let mut children = vec![Vec::new(); m];
        let mut components = Vec::new();
        for root in 0..m {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut pre = vec![];
            let mut stack = vec![root];
            while let Some(g) = stack.pop() {
                pre.push(g);
                for &(h, id) in self.adjacency[g].iter().rev() {
                    if !seen[h] {
                        seen[h] = true;
                        up[h] = Some((g, id));
                        children[g].push(h);
                        stack.push(h);
                    }
                }
            }
            for c in &mut children {
                c.sort_unstable();
            }
            pre.reverse();
            components.push(pre);
        }
        Forest {
            components,
            up,
            children,
        }
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out
}

/// Result of a (weighted) maximum-coverage selection.
#[derive(Debug, Clone, PartialEq)]
pub struct WmcSelection {
    /// Selected group indices, ascending.
    pub groups: Vec<usize>,
    /// Union of the selected groups.
    pub covered: Support,
    /// `Σ c_i` over covered elements.
    pub weight: f64,
}

fn selection(gs: &GroupStructure, c: &[f64], mut groups: Vec<usize>) -> WmcSelection {
    groups.sort_unstable();
    let mut mask = vec![false; gs.n];
    for &g in &groups {
        for &i in &gs.groups[g] {
            mask[i] = true;
        }
    }
    let weight = (0..gs.n).filter(|&i| mask[i]).map(|i| c[i]).sum();
    WmcSelection {
        groups,
        covered: Support::from_mask(&mask),
        weight,
    }
}

fn check_weights(c: &[f64], gs: &GroupStructure) -> Result<()> {
    if c.len() != gs.n {
        return Err(invalid("element weights must have length n"));
    }
    if c.iter().any(|v| !(*v >= 0.0)) {
        return Err(invalid("element weights must be non-negative"));
    }
    Ok(())
}

/// Greedy weighted maximum coverage: repeatedly takes the group with the
/// largest weight of not-yet-covered elements (lowest index on ties) until
/// `budget` groups are chosen or no group adds positive weight.
pub fn greedy_wmc(c: &[f64], gs: &GroupStructure, budget: usize) -> Result<WmcSelection> {
    check_weights(c, gs)?;
    let mut covered = vec![false; gs.n];
    let mut chosen = Vec::new();
    while chosen.len() < budget {
        let mut best: Option<(usize, f64)> = None;
        for (g, members) in gs.groups.iter().enumerate() {
            let gain: f64 = members
                .iter()
                .filter(|&&i| !covered[i])
                .map(|&i| c[i])
                .sum();
            if gain > 0.0 && best.is_none_or(|(_, b)| gain > b) {
                best = Some((g, gain));
            }
        }
        let Some((g, _)) = best else { break };
        for &i in &gs.groups[g] {
            covered[i] = true;
        }
        chosen.push(g);
    }
    Ok(selection(gs, c, chosen))
}

#[derive(Debug, Clone)]
struct Entry {
    value: f64,
    groups: Vec<usize>,
    elements: Vec<usize>,
}

impl Entry {
    fn empty() -> Self {
        Entry {
            value: 0.0,
            groups: Vec::new(),
            elements: Vec::new(),
        }
    }

    /// Strictly better for the same (group count, element count) cell:
    /// larger value, then lexicographically smaller groups, then elements.
    fn beats(&self, other: &Entry) -> bool {
        match self.value.partial_cmp(&other.value) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Equal) => {
                (&self.groups, &self.elements) < (&other.groups, &other.elements)
            }
            _ => false,
        }
    }

    fn join(&self, other: &Entry, extra_value: f64, extra_elements: &[usize]) -> Entry {
        let mut elements = merge_sorted(&self.elements, &other.elements);
        if !extra_elements.is_empty() {
            elements = merge_sorted(&elements, extra_elements);
        }
        Entry {
            value: self.value + other.value + extra_value,
            groups: merge_sorted(&self.groups, &other.groups),
            elements,
        }
    }
}

fn offer(cell: &mut Option<Entry>, cand: Entry) {
    if cell.as_ref().is_none_or(|cur| cand.beats(cur)) {
        *cell = Some(cand);
    }
}

/// Exact weighted maximum coverage on a loopless pairwise-overlapping group
/// structure, by dynamic programming over the group forest. Among optimal
/// selections the one with the fewest groups, then the lexicographically
/// smallest, is returned.
pub fn dp_loopless_groups(c: &[f64], gs: &GroupStructure, budget: usize) -> Result<WmcSelection> {
    check_weights(c, gs)?;
    let graph = gs.group_graph()?;
    let forest = graph.forest();
    let m = gs.len();
    let budget = budget.min(m);
    let sum = |els: &[usize]| els.iter().map(|&i| c[i]).sum::<f64>();

    // table[g][sel][s]
    let mut tables: Vec<[Vec<Option<Entry>>; 2]> = vec![[Vec::new(), Vec::new()]; m];
    let mut total: Vec<Option<Entry>> = vec![Some(Entry::empty())];
    for comp in &forest.components {
        for &g in comp {
            let mut off = vec![Some(Entry::empty())];
            let mut on = vec![
                None,
                Some(Entry {
                    value: sum(&graph.private[g]),
                    groups: vec![g],
                    elements: Vec::new(),
                }),
            ];
            if budget == 0 {
                on.truncate(1);
            }
            for &h in &forest.children[g] {
                let (_, edge) = forest.up[h].expect("child has a parent");
                let edge_value = sum(&graph.shared[edge]);
                let [child_off, child_on] = core::mem::take(&mut tables[h]);
                for (sel, acc) in [(false, &mut off), (true, &mut on)] {
                    let len = (acc.len() + child_off.len().max(child_on.len()) - 1).min(budget + 1);
                    let mut next: Vec<Option<Entry>> = vec![None; len];
                    for (s1, e1) in acc.iter().enumerate() {
                        let Some(e1) = e1 else { continue };
                        for (child_sel, child) in [(false, &child_off), (true, &child_on)] {
                            let bonus = if sel || child_sel { edge_value } else { 0.0 };
                            for (s2, e2) in child.iter().enumerate() {
                                let Some(e2) = e2 else { continue };
                                if s1 + s2 < len {
                                    offer(&mut next[s1 + s2], e1.join(e2, bonus, &[]));
                                }
                            }
                        }
                    }
                    *acc = next;
                }
            }
            tables[g] = [off, on];
        }
        let root = *comp.last().expect("component is non-empty");
        let [off, on] = core::mem::take(&mut tables[root]);
        let len = (total.len() + off.len().max(on.len()) - 1).min(budget + 1);
        let mut next = vec![None; len];
        for (s1, e1) in total.iter().enumerate() {
            let Some(e1) = e1 else { continue };
            for t in [&off, &on] {
                for (s2, e2) in t.iter().enumerate() {
                    let Some(e2) = e2 else { continue };
                    if s1 + s2 < len {
                        offer(&mut next[s1 + s2], e1.join(e2, 0.0, &[]));
                    }
                }
            }
        }
        total = next;
    }
    let mut best: Option<&Entry> = None;
    for e in total.iter().flatten() {
        if best.is_none_or(|b| e.value > b.value) {
            best = Some(e);
        }
    }
    let groups = best.map(|e| e.groups.clone()).unwrap_or_default();
    Ok(selection(gs, c, groups))
}

/// Result of the element-sparse group selection.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGroupSelection {
    pub groups: Vec<usize>,
    pub support: Support,
    pub weight: f64,
}

/// Top elements of a list by weight (ties by index), positive weights only.
fn ranked(c: &[f64], els: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = els.iter().copied().filter(|&i| c[i] > 0.0).collect();
    v.sort_by(|&a, &b| c[b].total_cmp(&c[a]).then(a.cmp(&b)));
    v
}

type SparseTable = Vec<Vec<Option<Entry>>>; // [groups][elements]

fn sparse_knapsack(
    a: &SparseTable,
    b: &SparseTable,
    max_groups: usize,
    max_elements: usize,
) -> SparseTable {
    let gl = (a.len() + b.len() - 1).min(max_groups + 1);
    let el_a = a.iter().map(Vec::len).max().unwrap_or(1);
    let el_b = b.iter().map(Vec::len).max().unwrap_or(1);
    let el = (el_a + el_b - 1).min(max_elements + 1);
    let mut out = vec![vec![None; el]; gl];
    for (s1, row1) in a.iter().enumerate() {
        for (e1, x) in row1.iter().enumerate() {
            let Some(x) = x else { continue };
            for (s2, row2) in b.iter().enumerate() {
                if s1 + s2 >= gl {
                    break;
                }
                for (e2, y) in row2.iter().enumerate() {
                    let Some(y) = y else { continue };
                    if e1 + e2 >= el {
                        break;
                    }
                    offer(&mut out[s1 + s2][e1 + e2], x.join(y, 0.0, &[]));
                }
            }
        }
    }
    out
}

fn cellwise_best(mut a: SparseTable, b: SparseTable) -> SparseTable {
    if a.len() < b.len() {
        a.resize(b.len(), Vec::new());
    }
    for (row_a, row_b) in a.iter_mut().zip(b) {
        if row_a.len() < row_b.len() {
            row_a.resize(row_b.len(), None);
        }
        for (cell, cand) in row_a.iter_mut().zip(row_b) {
            if let Some(cand) = cand {
                offer(cell, cand);
            }
        }
    }
    a
}

/// Exact solution of the sparse group selection problem on a loopless
/// structure: at most `max_groups` groups and at most `max_elements`
/// elements, every selected element covered by a selected group, maximizing
/// the selected weight.
pub fn dp_loopless_groups_sparse(
    c: &[f64],
    gs: &GroupStructure,
    max_groups: usize,
    max_elements: usize,
) -> Result<SparseGroupSelection> {
    check_weights(c, gs)?;
    if max_elements == 0 || max_elements > gs.n {
        return Err(invalid("element budget must satisfy 1 <= K <= n"));
    }
    let graph = gs.group_graph()?;
    let forest = graph.forest();
    let m = gs.len();
    let max_groups = max_groups.min(m);

    let mut tables: Vec<[SparseTable; 2]> = vec![[Vec::new(), Vec::new()]; m];
    let mut total: SparseTable = vec![vec![Some(Entry::empty())]];
    for comp in &forest.components {
        for &g in comp {
            let off: SparseTable = vec![vec![Some(Entry::empty())]];
            let mut on: SparseTable = vec![vec![None]];
            if max_groups >= 1 {
                let own = ranked(c, &graph.private[g]);
                let mut row = vec![None; own.len().min(max_elements) + 1];
                let mut value = 0.0;
                for (t, cell) in row.iter_mut().enumerate() {
                    if t > 0 {
                        value += c[own[t - 1]];
                    }
                    let mut elements = own[..t].to_vec();
                    elements.sort_unstable();
                    *cell = Some(Entry {
                        value,
                        groups: vec![g],
                        elements,
                    });
                }
                on.push(row);
            }
            let mut acc = [off, on];
            for &h in &forest.children[g] {
                let (_, edge) = forest.up[h].expect("child has a parent");
                let shared = ranked(c, &graph.shared[edge]);
                let [child_off, child_on] = core::mem::take(&mut tables[h]);
                for (sel, table) in acc.iter_mut().enumerate() {
                    // contribution of the child's subtree plus the shared
                    // elements, given this node's selection state
                    let mut contrib: SparseTable = Vec::new();
                    for (child_sel, child) in [(0, &child_off), (1, &child_on)] {
                        let usable = if sel == 1 || child_sel == 1 {
                            shared.len()
                        } else {
                            0
                        };
                        for (s2, row) in child.iter().enumerate() {
                            for (e0, entry) in row.iter().enumerate() {
                                let Some(entry) = entry else { continue };
                                let mut value = 0.0;
                                for t in 0..=usable {
                                    if t > 0 {
                                        value += c[shared[t - 1]];
                                    }
                                    let e = e0 + t;
                                    if e > max_elements {
                                        break;
                                    }
                                    if contrib.len() <= s2 {
                                        contrib.resize(s2 + 1, Vec::new());
                                    }
                                    if contrib[s2].len() <= e {
                                        contrib[s2].resize(e + 1, None);
                                    }
                                    let mut extra = shared[..t].to_vec();
                                    extra.sort_unstable();
                                    let cand = entry.join(&Entry::empty(), value, &extra);
                                    offer(&mut contrib[s2][e], cand);
                                }
                            }
                        }
                    }
                    *table = sparse_knapsack(table, &contrib, max_groups, max_elements);
                }
            }
            tables[g] = acc;
        }
        let root = *comp.last().expect("component is non-empty");
        let [off, on] = core::mem::take(&mut tables[root]);
        let with_off = sparse_knapsack(&total, &off, max_groups, max_elements);
        let with_on = sparse_knapsack(&total, &on, max_groups, max_elements);
        total = cellwise_best(with_off, with_on);
    }
    let mut best: Option<&Entry> = None;
    for row in &total {
        for e in row.iter().flatten() {
            if best.is_none_or(|b| e.value > b.value) {
                best = Some(e);
            }
        }
    }
    let best = best.cloned().unwrap_or_else(Entry::empty);
    Ok(SparseGroupSelection {
        weight: best.elements.iter().map(|&i| c[i]).sum(),
        support: Support::from_sorted_unchecked(gs.n, best.elements),
        groups: best.groups,
    })
}

/// Minimum-cost set of groups covering `supp(x)`; `None` when some support
/// element lies in no group. Costs are per-group (`1` for the group ℓ0
/// count, the group weights for the weighted cover).
fn min_cover(x: &[f64], gs: &GroupStructure, cost: &[f64]) -> Result<Option<(f64, Vec<usize>)>> {
    if x.len() != gs.n {
        return Err(invalid("signal length must match the group structure"));
    }
    let support: Vec<usize> = (0..gs.n).filter(|&i| x[i] != 0.0).collect();
    if support.iter().any(|&i| gs.membership[i].is_empty()) {
        return Ok(None);
    }
    if support.is_empty() {
        return Ok(Some((0.0, Vec::new())));
    }
    match gs.group_graph() {
        Ok(graph) => Ok(Some(cover_on_forest(&support, gs, &graph, cost))),
        Err(_) if gs.len() <= 20 => Ok(Some(cover_exhaustive(&support, gs, cost))),
        Err(_) => Err(Error::Capability(format!(
            "exact group cover needs a loopless structure or at most 20 groups (got {})",
            gs.len()
        ))),
    }
}

fn cover_exhaustive(support: &[usize], gs: &GroupStructure, cost: &[f64]) -> (f64, Vec<usize>) {
    let masks: Vec<u32> = support
        .iter()
        .map(|&i| gs.membership[i].iter().fold(0u32, |m, &g| m | (1 << g)))
        .collect();
    let mut best: Option<(f64, u32)> = None;
    for set in 0u32..(1u32 << gs.len()) {
        if masks.iter().all(|&m| m & set != 0) {
            let total: f64 = (0..gs.len())
                .filter(|g| set >> g & 1 == 1)
                .map(|g| cost[g])
                .sum();
            if best.is_none_or(|(b, _)| total < b) {
                best = Some((total, set));
            }
        }
    }
    let (total, set) = best.expect("all support elements are coverable");
    (total, (0..gs.len()).filter(|g| set >> g & 1 == 1).collect())
}

fn cover_on_forest(
    support: &[usize],
    gs: &GroupStructure,
    graph: &GroupGraph,
    cost: &[f64],
) -> (f64, Vec<usize>) {
    let forest = graph.forest();
    let m = gs.len();
    let in_support = {
        let mut mask = vec![false; gs.n];
        support.iter().for_each(|&i| mask[i] = true);
        mask
    };
    let must_take: Vec<bool> = (0..m)
        .map(|g| graph.private[g].iter().any(|&i| in_support[i]))
        .collect();
    let edge_needed: Vec<bool> = graph
        .shared
        .iter()
        .map(|els| els.iter().any(|&i| in_support[i]))
        .collect();
    // f[g] = (cost if g not taken, cost if taken)
    let mut f: Vec<(f64, f64)> = vec![(0.0, 0.0); m];
    for comp in &forest.components {
        for &g in comp {
            let mut off = if must_take[g] { f64::INFINITY } else { 0.0 };
            let mut on = cost[g];
            for &h in &forest.children[g] {
                let (_, edge) = forest.up[h].expect("child has a parent");
                let (h_off, h_on) = f[h];
                on += h_off.min(h_on);
                off += if edge_needed[edge] {
                    h_on
                } else {
                    h_off.min(h_on)
                };
            }
            f[g] = (off, on);
        }
    }
    let mut chosen = Vec::new();
    let mut total = 0.0;
    for comp in &forest.components {
        let root = *comp.last().expect("component is non-empty");
        let mut stack = vec![(root, f[root].1 < f[root].0)];
        total += f[root].0.min(f[root].1);
        while let Some((g, taken)) = stack.pop() {
            if taken {
                chosen.push(g);
            }
            for &h in &forest.children[g] {
                let (_, edge) = forest.up[h].expect("child has a parent");
                let (h_off, h_on) = f[h];
                let take_h = if !taken && edge_needed[edge] {
                    true
                } else {
                    h_on < h_off
                };
                stack.push((h, take_h));
            }
        }
    }
    chosen.sort_unstable();
    (total, chosen)
}

/// Group ℓ0 "norm": the minimum number of groups whose union covers
/// `supp(x)`; `None` when infeasible. Exact by dynamic programming on
/// loopless structures, by exhaustive search otherwise (at most 20 groups).
pub fn group_l0(x: &[f64], gs: &GroupStructure) -> Result<Option<usize>> {
    Ok(minimum_group_cover(x, gs)?.map(|g| g.len()))
}

/// The groups of a minimum-cardinality cover of `supp(x)`.
pub fn minimum_group_cover(x: &[f64], gs: &GroupStructure) -> Result<Option<Vec<usize>>> {
    let ones = vec![1.0; gs.len()];
    Ok(min_cover(x, gs, &ones)?.map(|(_, g)| g))
}

/// Minimum-weight set cover of `supp(x)` with the structure's group
/// weights: `(total weight, groups)`.
pub fn weighted_group_cover(x: &[f64], gs: &GroupStructure) -> Result<Option<(f64, Vec<usize>)>> {
    min_cover(x, gs, &gs.weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Three overlapping groups of five over eleven elements (0-based), with
    /// unit weight on two separated runs of three.
    fn chain_instance() -> (GroupStructure, Vec<f64>) {
        let gs = GroupStructure::unweighted(
            11,
            vec![(0..5).collect(), (3..8).collect(), (6..11).collect()],
        )
        .unwrap();
        let mut c = vec![0.0; 11];
        for i in [2, 3, 4, 6, 7, 8] {
            c[i] = 1.0;
        }
        (gs, c)
    }

    #[test]
    fn greedy_is_suboptimal_on_chain() {
        let (gs, c) = chain_instance();
        let g = greedy_wmc(&c, &gs, 2).unwrap();
        assert_eq!(g.groups, vec![0, 1]);
        assert_eq!(g.weight, 5.0);
        let d = dp_loopless_groups(&c, &gs, 2).unwrap();
        assert_eq!(d.groups, vec![0, 2]);
        assert_eq!(d.weight, 6.0);
    }

    #[test]
    fn greedy_edge_cases() {
        let gs = GroupStructure::unweighted(4, vec![vec![0, 1, 2, 3], vec![1]]).unwrap();
        let g = greedy_wmc(&[1.0, 2.0, 0.0, 1.0], &gs, 3).unwrap();
        assert_eq!(g.groups, vec![0]);
        assert_eq!(g.weight, 4.0);
        assert!(greedy_wmc(&[0.0; 4], &gs, 2).unwrap().groups.is_empty());
    }

    #[test]
    fn dp_with_all_groups_covers_everything() {
        let (gs, c) = chain_instance();
        let d = dp_loopless_groups(&c, &gs, 3).unwrap();
        assert_eq!(d.weight, 6.0);
        assert_eq!(d.groups, vec![0, 2]);
    }

    #[test]
    fn loopless_detection() {
        let (gs, _) = chain_instance();
        assert!(gs.is_loopless());
        let triangle =
            GroupStructure::unweighted(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert!(!triangle.is_loopless());
        assert!(matches!(
            dp_loopless_groups(&[1.0; 3], &triangle, 1),
            Err(Error::ModelViolation(_))
        ));
        let triple = GroupStructure::unweighted(2, vec![vec![0], vec![0], vec![0, 1]]).unwrap();
        assert!(!triple.is_loopless());
    }

    #[test]
    fn sparse_variant_small_case() {
        let gs = GroupStructure::unweighted(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let s = dp_loopless_groups_sparse(&[1.0, 4.0, 9.0], &gs, 1, 1).unwrap();
        assert_eq!(s.groups, vec![1]);
        assert_eq!(s.support.indices(), &[2]);
        assert_eq!(s.weight, 9.0);
    }

    #[test]
    fn sparse_variant_with_inactive_constraints_matches_cover() {
        let (gs, c) = chain_instance();
        let s = dp_loopless_groups_sparse(&c, &gs, 3, 11).unwrap();
        assert_eq!(s.weight, dp_loopless_groups(&c, &gs, 3).unwrap().weight);
    }

    #[test]
    fn group_l0_cases() {
        let (gs, c) = chain_instance();
        assert_eq!(group_l0(&c, &gs).unwrap(), Some(2));
        assert_eq!(minimum_group_cover(&c, &gs).unwrap(), Some(vec![0, 2]));
        assert_eq!(group_l0(&[0.0; 11], &gs).unwrap(), Some(0));
        let partial = GroupStructure::unweighted(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(group_l0(&[1.0, 0.0, 1.0], &partial).unwrap(), None);
    }

    #[test]
    fn weighted_cover_prefers_cheap_groups() {
        let gs = GroupStructure::new(
            4,
            vec![vec![0, 1, 2, 3], vec![0, 1], vec![2, 3]],
            vec![5.0, 1.0, 1.0],
        )
        .unwrap();
        let (w, g) = weighted_group_cover(&[1.0, 0.0, 0.0, 1.0], &gs)
            .unwrap()
            .unwrap();
        assert_eq!((w, g), (2.0, vec![1, 2]));
        assert_eq!(group_l0(&[1.0, 0.0, 0.0, 1.0], &gs).unwrap(), Some(1));
    }

    #[test]
    fn capability_limit() {
        // 21 copies of a triangle-free but loopy structure: every element in
        // three groups
        let groups: Vec<Vec<usize>> = (0..21).map(|_| vec![0]).collect();
        let gs = GroupStructure::unweighted(1, groups).unwrap();
        assert!(matches!(group_l0(&[1.0], &gs), Err(Error::Capability(_))));
    }
}
