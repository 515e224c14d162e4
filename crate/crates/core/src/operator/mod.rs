//! Linear sensing and analysis operators with matched adjoints.

pub mod haar;

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;
use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::linalg::{dot, norm2};
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Dense,
    Expander,
    Sparse,
    Identity,
    Haar2d,
    Adjoint,
    Composition,
}

/// A real linear map `ℝⁿ → ℝᵐ` together with its adjoint.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearOperator {
    /// Row-major dense matrix.
    Dense {
        rows: usize,
        cols: usize,
        data: Vec<f64>,
    },
    /// Binary matrix with exactly `degree` ones per column; `row_indices`
    /// holds the sorted row positions column after column.
    Expander {
        rows: usize,
        cols: usize,
        degree: usize,
        row_indices: Vec<usize>,
    },
    /// Coordinate-format sparse matrix (duplicates are summed).
    Sparse {
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, f64)>,
    },
    Identity(usize),
    /// Orthonormal 2-D Haar analysis on `side × side` images.
    Haar2d {
        side: usize,
    },
    Adjoint(Box<LinearOperator>),
    /// `outer ∘ inner`
    Composition {
        outer: Box<LinearOperator>,
        inner: Box<LinearOperator>,
    },
}

impl LinearOperator {
    /// Dense operator with i.i.d. `N(0, 1/m)` entries, so columns have unit
    /// squared norm in expectation.
    pub fn gaussian(m: usize, n: usize, seed: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(invalid("gaussian operator needs m, n >= 1"));
        }
        let mut rng = seeded(seed);
        let scale = 1.0 / (m as f64).sqrt();
        let mut data = vec![0.0; m * n];
        // column-major draw order, row-major storage
        for j in 0..n {
            for i in 0..m {
                let g: f64 = rng.sample(StandardNormal);
                data[i * n + j] = g * scale;
            }
        }
        Ok(LinearOperator::Dense {
            rows: m,
            cols: n,
            data,
        })
    }

    /// Adjacency matrix of a random left-`d`-regular bipartite graph: each of
    /// the `n` columns gets `d` distinct rows drawn without replacement.
    pub fn expander(m: usize, n: usize, d: usize, seed: u64) -> Result<Self> {
        if n == 0 || d == 0 || d > m {
            return Err(invalid(format!(
                "expander needs 1 <= d <= m and n >= 1 (m={m}, n={n}, d={d})"
            )));
        }
        let mut rng = seeded(seed);
        let mut row_indices = Vec::with_capacity(n * d);
        for _ in 0..n {
            let mut col: Vec<usize> = index::sample(&mut rng, m, d).into_vec();
            col.sort_unstable();
            row_indices.extend(col);
        }
        Ok(LinearOperator::Expander {
            rows: m,
            cols: n,
            degree: d,
            row_indices,
        })
    }

    pub fn haar2d(side: usize) -> Result<Self> {
        haar::check_side(side)?;
        Ok(LinearOperator::Haar2d { side })
    }

    pub fn identity(n: usize) -> Self {
        LinearOperator::Identity(n)
    }

    pub fn dense(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(invalid("dense data length does not match shape"));
        }
        Ok(LinearOperator::Dense { rows, cols, data })
    }

    pub fn sparse(rows: usize, cols: usize, entries: Vec<(usize, usize, f64)>) -> Result<Self> {
        if entries.iter().any(|&(i, j, _)| i >= rows || j >= cols) {
            return Err(invalid("sparse entry out of range"));
        }
        Ok(LinearOperator::Sparse {
            rows,
            cols,
            entries,
        })
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        LinearOperator::Sparse {
            rows: diag.len(),
            cols: diag.len(),
            entries: diag.iter().enumerate().map(|(i, &d)| (i, i, d)).collect(),
        }
    }

    /// Forward differences `x_{i+1} − x_i` along a path of `n` nodes.
    pub fn difference_chain(n: usize) -> Self {
        let mut entries = Vec::with_capacity(2 * n);
        for i in 1..n {
            entries.push((i - 1, i, 1.0));
            entries.push((i - 1, i - 1, -1.0));
        }
        LinearOperator::Sparse {
            rows: n.saturating_sub(1),
            cols: n,
            entries,
        }
    }

    /// Horizontal then vertical forward differences on a row-major
    /// `rows × cols` grid; `‖Dx‖₁` is the anisotropic total variation.
    pub fn difference_grid(rows: usize, cols: usize) -> Self {
        let mut entries = Vec::new();
        let mut r = 0;
        for i in 0..rows {
            for j in 0..cols {
                let v = i * cols + j;
                if j + 1 < cols {
                    entries.push((r, v + 1, 1.0));
                    entries.push((r, v, -1.0));
                    r += 1;
                }
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                let v = i * cols + j;
                if i + 1 < rows {
                    entries.push((r, v + cols, 1.0));
                    entries.push((r, v, -1.0));
                    r += 1;
                }
            }
        }
        LinearOperator::Sparse {
            rows: r,
            cols: rows * cols,
            entries,
        }
    }

    pub fn compose(outer: LinearOperator, inner: LinearOperator) -> Result<Self> {
        if outer.cols() != inner.rows() {
            return Err(invalid(format!(
                "cannot compose {}x{} with {}x{}",
                outer.rows(),
                outer.cols(),
                inner.rows(),
                inner.cols()
            )));
        }
        Ok(LinearOperator::Composition {
            outer: Box::new(outer),
            inner: Box::new(inner),
        })
    }

    pub fn transpose(self) -> Self {
        match self {
            LinearOperator::Adjoint(inner) => *inner,
            LinearOperator::Identity(n) => LinearOperator::Identity(n),
            other => LinearOperator::Adjoint(Box::new(other)),
        }
    }

    pub fn kind(&self) -> OperatorKind {
        match self {
            LinearOperator::Dense { .. } => OperatorKind::Dense,
            LinearOperator::Expander { .. } => OperatorKind::Expander,
            LinearOperator::Sparse { .. } => OperatorKind::Sparse,
            LinearOperator::Identity(_) => OperatorKind::Identity,
            LinearOperator::Haar2d { .. } => OperatorKind::Haar2d,
            LinearOperator::Adjoint(_) => OperatorKind::Adjoint,
            LinearOperator::Composition { .. } => OperatorKind::Composition,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            LinearOperator::Dense { rows, .. }
            | LinearOperator::Expander { rows, .. }
            | LinearOperator::Sparse { rows, .. } => *rows,
            LinearOperator::Identity(n) => *n,
            LinearOperator::Haar2d { side } => side * side,
            LinearOperator::Adjoint(inner) => inner.cols(),
            LinearOperator::Composition { outer, .. } => outer.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            LinearOperator::Dense { cols, .. }
            | LinearOperator::Expander { cols, .. }
            | LinearOperator::Sparse { cols, .. } => *cols,
            LinearOperator::Identity(n) => *n,
            LinearOperator::Haar2d { side } => side * side,
            LinearOperator::Adjoint(inner) => inner.rows(),
            LinearOperator::Composition { inner, .. } => inner.cols(),
        }
    }

    /// `out = A x`
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols());
        debug_assert_eq!(out.len(), self.rows());
        match self {
            LinearOperator::Dense { cols, data, .. } => {
                for (o, row) in out.iter_mut().zip(data.chunks_exact(*cols)) {
                    *o = dot(row, x);
                }
            }
            LinearOperator::Expander {
                degree,
                row_indices,
                ..
            } => {
                out.fill(0.0);
                for (j, rows) in row_indices.chunks_exact(*degree).enumerate() {
                    let v = x[j];
                    if v != 0.0 {
                        for &i in rows {
                            out[i] += v;
                        }
                    }
                }
            }
            LinearOperator::Sparse { entries, .. } => {
                out.fill(0.0);
                for &(i, j, a) in entries {
                    out[i] += a * x[j];
                }
            }
            LinearOperator::Identity(_) => out.copy_from_slice(x),
            LinearOperator::Haar2d { side } => haar::forward(x, *side, out),
            LinearOperator::Adjoint(inner) => inner.apply_adjoint(x, out),
            LinearOperator::Composition { outer, inner } => {
                let mut mid = vec![0.0; inner.rows()];
                inner.apply(x, &mut mid);
                outer.apply(&mid, out);
            }
        }
    }

    /// `out = Aᵀ y`
    pub fn apply_adjoint(&self, y: &[f64], out: &mut [f64]) {
        debug_assert_eq!(y.len(), self.rows());
        debug_assert_eq!(out.len(), self.cols());
        match self {
            LinearOperator::Dense { cols, data, .. } => {
                out.fill(0.0);
                for (row, &yi) in data.chunks_exact(*cols).zip(y) {
                    if yi != 0.0 {
                        for (o, a) in out.iter_mut().zip(row) {
                            *o += a * yi;
                        }
                    }
                }
            }
            LinearOperator::Expander {
                degree,
                row_indices,
                ..
            } => {
                for (o, rows) in out.iter_mut().zip(row_indices.chunks_exact(*degree)) {
                    *o = rows.iter().map(|&i| y[i]).sum();
                }
            }
            LinearOperator::Sparse { entries, .. } => {
                out.fill(0.0);
                for &(i, j, a) in entries {
                    out[j] += a * y[i];
                }
            }
            LinearOperator::Identity(_) => out.copy_from_slice(y),
            LinearOperator::Haar2d { side } => haar::inverse(y, *side, out),
            LinearOperator::Adjoint(inner) => inner.apply(y, out),
            LinearOperator::Composition { outer, inner } => {
                let mut mid = vec![0.0; outer.cols()];
                outer.apply_adjoint(y, &mut mid);
                inner.apply_adjoint(&mid, out);
            }
        }
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows()];
        self.apply(x, &mut out);
        out
    }

    pub fn adjoint(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols()];
        self.apply_adjoint(y, &mut out);
        out
    }

    /// Materializes the operator as a row-major dense matrix.
    pub fn to_dense(&self) -> Vec<f64> {
        let (m, n) = (self.rows(), self.cols());
        let mut data = vec![0.0; m * n];
        let mut e = vec![0.0; n];
        let mut col = vec![0.0; m];
        for j in 0..n {
            e[j] = 1.0;
            self.apply(&e, &mut col);
            e[j] = 0.0;
            for i in 0..m {
                data[i * n + j] = col[i];
            }
        }
        data
    }
}

/// Power-iteration estimate of `σ_max(A)²`, the Lipschitz constant of the
/// gradient of `½‖u − Ax‖²`. Deterministic start; the returned estimate is
/// the running maximum of Rayleigh quotients, so it is non-decreasing in
/// `iters`.
pub fn lipschitz_estimate(a: &LinearOperator, iters: usize) -> f64 {
    let n = a.cols();
    let mut rng = seeded(0x5eed_1234);
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let nv = norm2(&v);
    if nv == 0.0 {
        return 0.0;
    }
    v.iter_mut().for_each(|x| *x /= nv);
    let mut av = vec![0.0; a.rows()];
    let mut estimate: f64 = 0.0;
    for _ in 0..iters.max(1) {
        a.apply(&v, &mut av);
        estimate = estimate.max(dot(&av, &av));
        a.apply_adjoint(&av, &mut v);
        let nz = norm2(&v);
        if nz == 0.0 {
            break;
        }
        v.iter_mut().for_each(|x| *x /= nz);
    }
    estimate
}
