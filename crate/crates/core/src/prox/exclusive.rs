use alloc::format;
use alloc::vec::Vec;

use super::latent::DuplicationMap;
use super::Prox;
use crate::error::{invalid, Error, Result};

/// `argmin_y ½‖y − v‖² + λ‖y‖₁²`. Optimality gives `y = sign(v)·max(|v| − t, 0)`
/// with `t = 2λ‖y‖₁`; scanning magnitudes in decreasing order finds `t`.
pub fn prox_sq_l1(v: &[f64], lambda: f64) -> Vec<f64> {
    if lambda == 0.0 {
        return v.to_vec();
    }
    let mut mags: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut t = 0.0;
    for (r, &a) in mags.iter().enumerate() {
        if a == 0.0 {
            break;
        }
        cumulative += a;
        let candidate = 2.0 * lambda * cumulative / (1.0 + 2.0 * lambda * (r + 1) as f64);
        if a > candidate {
            t = candidate;
        } else {
            break;
        }
    }
    v.iter()
        .map(|&x| {
            let m = x.abs() - t;
            if m > 0.0 {
                m.copysign(x)
            } else {
                0.0
            }
        })
        .collect()
}

/// `Σ_G (Σ_{j∈G} |x_j|)^p`; only `p = 2` is supported.
pub fn exclusive_norm(x: &[f64], groups: &[Vec<usize>], p: u32) -> Result<f64> {
    if p != 2 {
        return Err(Error::Capability(format!(
            "exclusive norm supports p = 2 only, got {p}"
        )));
    }
    let mut total = 0.0;
    for g in groups {
        let mut s = 0.0;
        for &i in g {
            if i >= x.len() {
                return Err(invalid(format!("group index {i} out of range")));
            }
            s += x[i].abs();
        }
        total += s * s;
    }
    Ok(total)
}

/// All windows `{i, …, i + width − 1}` inside `0..n`.
pub fn sliding_windows(n: usize, width: usize) -> Vec<Vec<usize>> {
    if width == 0 || width > n {
        return Vec::new();
    }
    (0..=n - width).map(|i| (i..i + width).collect()).collect()
}

/// `λ Σ_G w_G ‖v_G‖₁²` on the latent vector of a [`DuplicationMap`].
#[derive(Debug, Clone)]
pub struct LatentExclusive {
    pub map: DuplicationMap,
    pub lambda: f64,
}

impl Prox for LatentExclusive {
    fn penalty(&self, v: &[f64]) -> f64 {
        (0..self.map.num_groups())
            .map(|g| {
                let s: f64 = v[self.map.block(g)].iter().map(|a| a.abs()).sum();
                self.map.weights()[g] * s * s
            })
            .sum::<f64>()
            * self.lambda
    }

    fn prox(&self, v: &[f64], step: f64, out: &mut [f64]) -> Result<()> {
        for g in 0..self.map.num_groups() {
            let block = self.map.block(g);
            let y = prox_sq_l1(
                &v[block.clone()],
                step * self.lambda * self.map.weights()[g],
            );
            out[block].copy_from_slice(&y);
        }
        Ok(())
    }
}
