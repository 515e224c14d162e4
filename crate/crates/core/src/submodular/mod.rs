//! Set functions, their Lovász extension, submodular minimization backends,
//! the majorization-minimization solver for submodular-regularized least
//! squares, and the Lovász-extension proximal operator.

mod lovasz;
mod maxflow;
mod minnorm;
mod mm;
mod prox;
mod sfm;

pub use lovasz::lovasz_extension;
pub use minnorm::{min_norm_point, BaseOracle, MinNormOptions, MinNormPoint};
pub use mm::{mm_objective, mm_solve, MmConfig, MmResult};
pub use prox::{prox_lovasz, prox_lovasz_extension, prox_lovasz_norm, LovaszProx};
pub use sfm::{sfm_bruteforce, sfm_graphcut, sfm_minnorm, SfmSolution};

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Error, Result};
use crate::models::{weighted_group_cover, GroupStructure};

/// `R(S) = Σ_{i∈S} w_i`
#[derive(Debug, Clone, PartialEq)]
pub struct ModularFunction {
    pub weights: Vec<f64>,
}

impl ModularFunction {
    pub fn new(weights: Vec<f64>) -> Self {
        ModularFunction { weights }
    }

    pub fn eval(&self, set: &[bool]) -> f64 {
        self.weights
            .iter()
            .zip(set)
            .filter(|(_, s)| **s)
            .map(|(w, _)| w)
            .sum()
    }
}

/// Weighted graph cut `R(S) = Σ_{(i,j)∈E, |{i,j}∩S|=1} w_ij`. Symmetric:
/// `R(S) = R(𝒩∖S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutFunction {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl CutFunction {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j, w) in &edges {
            if i >= n || j >= n {
                return Err(invalid(format!("edge ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(invalid(format!("self-loop at vertex {i}")));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(invalid("edge weights must be positive and finite"));
            }
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        Ok(CutFunction {
            n,
            edges,
            adjacency,
        })
    }

    /// Path graph `0 – 1 – … – (n−1)` with uniform weight.
    pub fn chain(n: usize, weight: f64) -> Result<Self> {
        CutFunction::new(n, (1..n).map(|i| (i - 1, i, weight)).collect())
    }

    /// 4-neighbour lattice over a row-major `rows × cols` grid.
    pub fn lattice(rows: usize, cols: usize, weight: f64) -> Result<Self> {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1, weight));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols, weight));
                }
            }
        }
        CutFunction::new(rows * cols, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn eval(&self, set: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|(i, j, _)| set[*i] != set[*j])
            .map(|(_, _, w)| w)
            .sum()
    }

    fn scaled(&self, s: f64) -> CutFunction {
        CutFunction {
            n: self.n,
            edges: self.edges.iter().map(|&(i, j, w)| (i, j, w * s)).collect(),
            adjacency: self
                .adjacency
                .iter()
                .map(|a| a.iter().map(|&(j, w)| (j, w * s)).collect())
                .collect(),
        }
    }
}

type Oracle = Arc<dyn Fn(&[bool]) -> f64 + Send + Sync>;

/// Graph-cut edges `(i, j, w)` plus modular weights.
pub type CutSplit = (Vec<(usize, usize, f64)>, Vec<f64>);

/// Set function given only by a value oracle; normalized so that
/// `R(∅) = 0`.
#[derive(Clone)]
pub struct GenericSetFunction {
    n: usize,
    oracle: Oracle,
    offset: f64,
}

impl fmt::Debug for GenericSetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenericSetFunction")
            .field("n", &self.n)
            .field("offset", &self.offset)
            .finish_non_exhaustive()
    }
}

impl GenericSetFunction {
    fn eval(&self, set: &[bool]) -> f64 {
        (self.oracle)(set) - self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetFunctionKind {
    Generic,
    Modular,
    Cardinality,
    Cut,
    Sum,
}

/// A normalized set function `R: 2^𝒩 → ℝ` (`R(∅) = 0`).
#[derive(Debug, Clone)]
pub enum SetFunction {
    Modular(ModularFunction),
    /// `scale · |S|`
    Cardinality {
        n: usize,
        scale: f64,
    },
    Cut(CutFunction),
    /// Pointwise sum of functions over the same ground set.
    Sum(Vec<SetFunction>),
    Generic(GenericSetFunction),
}

impl SetFunction {
    pub fn cardinality(n: usize) -> Self {
        SetFunction::Cardinality { n, scale: 1.0 }
    }

    pub fn modular(weights: Vec<f64>) -> Self {
        SetFunction::Modular(ModularFunction::new(weights))
    }

    pub fn cut(cut: CutFunction) -> Self {
        SetFunction::Cut(cut)
    }

    pub fn sum(parts: Vec<SetFunction>) -> Result<Self> {
        if let Some(first) = parts.first() {
            if parts.iter().any(|p| p.n() != first.n()) {
                return Err(invalid("summed set functions must share the ground set"));
            }
        }
        Ok(SetFunction::Sum(parts))
    }

    /// Wraps a value oracle, subtracting `oracle(∅)` so the result is
    /// normalized.
    pub fn generic(n: usize, oracle: impl Fn(&[bool]) -> f64 + Send + Sync + 'static) -> Self {
        let offset = oracle(&vec![false; n]);
        SetFunction::Generic(GenericSetFunction {
            n,
            oracle: Arc::new(oracle),
            offset,
        })
    }

    /// Weighted set-cover function: `R(S)` is the minimum total weight of
    /// groups covering `S` (`+∞` when some element of `S` is uncoverable).
    /// Value oracle only; each evaluation solves a cover problem exactly.
    pub fn set_cover(groups: GroupStructure) -> Self {
        let n = groups.dim();
        SetFunction::generic(n, move |set| {
            let x: Vec<f64> = set.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
            match weighted_group_cover(&x, &groups) {
                Ok(Some((w, _))) => w,
                _ => f64::INFINITY,
            }
        })
    }

    pub fn n(&self) -> usize {
        match self {
            SetFunction::Modular(m) => m.weights.len(),
            SetFunction::Cardinality { n, .. } => *n,
            SetFunction::Cut(c) => c.n,
            SetFunction::Sum(parts) => parts.first().map_or(0, SetFunction::n),
            SetFunction::Generic(g) => g.n,
        }
    }

    pub fn kind(&self) -> SetFunctionKind {
        match self {
            SetFunction::Modular(_) => SetFunctionKind::Modular,
            SetFunction::Cardinality { .. } => SetFunctionKind::Cardinality,
            SetFunction::Cut(_) => SetFunctionKind::Cut,
            SetFunction::Sum(_) => SetFunctionKind::Sum,
            SetFunction::Generic(_) => SetFunctionKind::Generic,
        }
    }

    pub fn eval(&self, set: &[bool]) -> f64 {
        debug_assert_eq!(set.len(), self.n());
        match self {
            SetFunction::Modular(m) => m.eval(set),
            SetFunction::Cardinality { scale, .. } => {
                scale * set.iter().filter(|b| **b).count() as f64
            }
            SetFunction::Cut(c) => c.eval(set),
            SetFunction::Sum(parts) => parts.iter().map(|p| p.eval(set)).sum(),
            SetFunction::Generic(g) => g.eval(set),
        }
    }

    /// Evaluates `R` on an index list.
    pub fn eval_indices(&self, indices: &[usize]) -> f64 {
        let mut mask = vec![false; self.n()];
        for &i in indices {
            mask[i] = true;
        }
        self.eval(&mask)
    }

    /// Edmonds' greedy vertex of the base polytope for the given order:
    /// `out[order[k]] = R(order[..=k]) − R(order[..k])`.
    pub fn greedy_vertex(&self, order: &[usize], out: &mut [f64]) {
        match self {
            SetFunction::Modular(m) => out.copy_from_slice(&m.weights),
            SetFunction::Cardinality { scale, .. } => out.fill(*scale),
            SetFunction::Cut(c) => {
                let mut inside = vec![false; c.n];
                for &v in order {
                    out[v] = c.adjacency[v]
                        .iter()
                        .map(|&(u, w)| if inside[u] { -w } else { w })
                        .sum();
                    inside[v] = true;
                }
            }
            SetFunction::Sum(parts) => {
                out.fill(0.0);
                let mut tmp = vec![0.0; out.len()];
                for p in parts {
                    p.greedy_vertex(order, &mut tmp);
                    for (o, t) in out.iter_mut().zip(&tmp) {
                        *o += t;
                    }
                }
            }
            SetFunction::Generic(g) => {
                let mut mask = vec![false; g.n];
                let mut prev = 0.0;
                for &v in order {
                    mask[v] = true;
                    let cur = g.eval(&mask);
                    out[v] = cur - prev;
                    prev = cur;
                }
            }
        }
    }

    /// `s · R` for `s ≥ 0`.
    pub fn scaled(&self, s: f64) -> SetFunction {
        match self {
            SetFunction::Modular(m) => {
                SetFunction::modular(m.weights.iter().map(|w| w * s).collect())
            }
            SetFunction::Cardinality { n, scale } => SetFunction::Cardinality {
                n: *n,
                scale: scale * s,
            },
            SetFunction::Cut(c) if s > 0.0 => SetFunction::Cut(c.scaled(s)),
            SetFunction::Cut(c) => SetFunction::Cardinality { n: c.n, scale: 0.0 },
            SetFunction::Sum(parts) => {
                SetFunction::Sum(parts.iter().map(|p| p.scaled(s)).collect())
            }
            SetFunction::Generic(g) => {
                let inner = g.clone();
                SetFunction::Generic(GenericSetFunction {
                    n: g.n,
                    oracle: Arc::new(move |set| s * inner.eval(set)),
                    offset: 0.0,
                })
            }
        }
    }

    /// Splits `R` into graph-cut edges plus a modular part when every
    /// component is a cut, modular or cardinality function.
    pub fn as_cut_plus_modular(&self) -> Option<CutSplit> {
        let mut edges = Vec::new();
        let mut weights = vec![0.0; self.n()];
        self.collect_cut_modular(&mut edges, &mut weights)
            .then_some((edges, weights))
    }

    fn collect_cut_modular(&self, edges: &mut Vec<(usize, usize, f64)>, w: &mut [f64]) -> bool {
        match self {
            SetFunction::Modular(m) => {
                w.iter_mut().zip(&m.weights).for_each(|(a, b)| *a += b);
                true
            }
            SetFunction::Cardinality { scale, .. } => {
                w.iter_mut().for_each(|a| *a += scale);
                true
            }
            SetFunction::Cut(c) => {
                edges.extend_from_slice(&c.edges);
                true
            }
            SetFunction::Sum(parts) => parts.iter().all(|p| p.collect_cut_modular(edges, w)),
            SetFunction::Generic(_) => false,
        }
    }

    /// True when `R` is structurally known to be non-decreasing
    /// (non-negative modular and cardinality parts only).
    pub fn is_known_nondecreasing(&self) -> bool {
        match self {
            SetFunction::Modular(m) => m.weights.iter().all(|w| *w >= 0.0),
            SetFunction::Cardinality { scale, .. } => *scale >= 0.0,
            SetFunction::Cut(_) | SetFunction::Generic(_) => false,
            SetFunction::Sum(parts) => parts.iter().all(SetFunction::is_known_nondecreasing),
        }
    }
}

/// Largest ground set accepted by [`is_submodular`].
pub const MAX_SUBMODULARITY_CHECK: usize = 12;

/// Exhaustive diminishing-returns check, through the equivalent pairwise
/// form `R(S+i) + R(S+j) ≥ R(S+i+j) + R(S)` for all `S` and `i, j ∉ S`.
pub fn is_submodular(r: &SetFunction) -> Result<bool> {
    let n = r.n();
    if n > MAX_SUBMODULARITY_CHECK {
        return Err(Error::Capability(format!(
            "exhaustive submodularity check supports n <= {MAX_SUBMODULARITY_CHECK}, got {n}"
        )));
    }
    let size = 1usize << n;
    let mut mask = vec![false; n];
    let values: Vec<f64> = (0..size)
        .map(|s| {
            for (i, m) in mask.iter_mut().enumerate() {
                *m = s >> i & 1 == 1;
            }
            r.eval(&mask)
        })
        .collect();
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-10 * scale;
    for s in 0..size {
        for i in 0..n {
            if s >> i & 1 == 1 {
                continue;
            }
            for j in i + 1..n {
                if s >> j & 1 == 1 {
                    continue;
                }
                let lhs = values[s | 1 << i] + values[s | 1 << j];
                let rhs = values[s | 1 << i | 1 << j] + values[s];
                if lhs < rhs - tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
