use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::Prox;
use crate::error::{invalid, Result};
use crate::linalg::{norm1, norm2};
use crate::signal::Signal;

fn shrink(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

/// Componentwise `sign(x)·max(|x| − λ, 0)`.
pub fn soft_threshold(x: &[f64], lambda: f64) -> Signal {
    if lambda == 0.0 {
        return Signal::from(x.to_vec());
    }
    Signal::from(x.iter().map(|&v| shrink(v, lambda)).collect::<Vec<_>>())
}

/// Group-wise shrinkage `y_G = x_G · max(1 − λ w_G / ‖x_G‖, 0)` over disjoint
/// groups. Coordinates outside every group pass through unchanged.
pub fn block_soft_threshold(
    x: &[f64],
    groups: &[Vec<usize>],
    lambda: f64,
    weights: &[f64],
) -> Result<Signal> {
    let mut out = x.to_vec();
    check_partition(x.len(), groups, weights)?;
    if lambda != 0.0 {
        for (g, w) in groups.iter().zip(weights) {
            shrink_block(x, g, lambda * w, &mut out);
        }
    }
    Ok(Signal::from(out))
}

pub(crate) fn shrink_block(x: &[f64], group: &[usize], t: f64, out: &mut [f64]) {
    let norm = group.iter().map(|&i| x[i] * x[i]).sum::<f64>().sqrt();
    let factor = if norm > t { 1.0 - t / norm } else { 0.0 };
    for &i in group {
        out[i] = x[i] * factor;
    }
}

fn check_partition(n: usize, groups: &[Vec<usize>], weights: &[f64]) -> Result<()> {
    if groups.len() != weights.len() {
        return Err(invalid("one weight per group required"));
    }
    if weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(invalid("group weights must be non-negative"));
    }
    let mut seen = vec![false; n];
    for g in groups {
        for &i in g {
            if i >= n {
                return Err(invalid(format!("group index {i} out of range")));
            }
            if seen[i] {
                return Err(invalid(format!(
                    "index {i} belongs to two groups; overlapping groups need the latent duplication path"
                )));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

/// `λ‖x‖₁`
#[derive(Debug, Clone, Copy)]
pub struct L1 {
    pub lambda: f64,
}

impl Prox for L1 {
    fn penalty(&self, x: &[f64]) -> f64 {
        self.lambda * norm1(x)
    }

    fn prox(&self, x: &[f64], step: f64, out: &mut [f64]) -> Result<()> {
        let t = step * self.lambda;
        if t == 0.0 {
            out.copy_from_slice(x);
        } else {
            out.iter_mut().zip(x).for_each(|(o, &v)| *o = shrink(v, t));
        }
        Ok(())
    }
}

/// `λ Σ_G w_G ‖x_G‖₂` over disjoint groups.
#[derive(Debug, Clone)]
pub struct GroupLasso {
    groups: Vec<Vec<usize>>,
    weights: Vec<f64>,
    lambda: f64,
}

impl GroupLasso {
    pub fn new(n: usize, groups: Vec<Vec<usize>>, weights: Vec<f64>, lambda: f64) -> Result<Self> {
        check_partition(n, &groups, &weights)?;
        Ok(GroupLasso {
            groups,
            weights,
            lambda,
        })
    }
}

impl Prox for GroupLasso {
    fn penalty(&self, x: &[f64]) -> f64 {
        let mut buf = Vec::new();
        self.groups
            .iter()
            .zip(&self.weights)
            .map(|(g, w)| {
                buf.clear();
                buf.extend(g.iter().map(|&i| x[i]));
                w * norm2(&buf)
            })
            .sum::<f64>()
            * self.lambda
    }

    fn prox(&self, x: &[f64], step: f64, out: &mut [f64]) -> Result<()> {
        out.copy_from_slice(x);
        let t = step * self.lambda;
        if t != 0.0 {
            for (g, w) in self.groups.iter().zip(&self.weights) {
                shrink_block(x, g, t * w, out);
            }
        }
        Ok(())
    }
}
