use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{energies, ModelProjection};
use crate::error::{invalid, Result};
use crate::signal::{Signal, Support};

/// Spike-train model: at most `k` nonzeros, any two at index distance
/// `≥ delta` (`delta` consecutive indices hold at most one spike).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DispersiveModel {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
}

impl DispersiveModel {
    pub fn new(n: usize, k: usize, delta: usize) -> Result<Self> {
        if k == 0 || k > n || delta == 0 || delta > n {
            return Err(invalid(format!(
                "dispersive model needs 1 <= k <= n and 1 <= delta <= n (n={n}, k={k}, delta={delta})"
            )));
        }
        Ok(DispersiveModel { n, k, delta })
    }
}

/// True if `support` has at most `k` entries pairwise `≥ delta` apart.
pub fn is_dispersive(support: &Support, k: usize, delta: usize) -> bool {
    support.len() <= k && support.indices().windows(2).all(|w| w[1] - w[0] >= delta)
}

/// Exact projection onto the dispersive model: maximizes `Σ_{i∈S} x_i²`
/// over feasible supports by an `O(n·k)` dynamic program. Among optimal
/// supports the lexicographically smallest is returned.
pub fn project_dispersive(x: &[f64], model: &DispersiveModel) -> (Signal, Support) {
    project(x, model.k, model.delta)
}

fn project(x: &[f64], k: usize, delta: usize) -> (Signal, Support) {
    let n = x.len();
    let gain = energies(x);
    let width = k + 1;
    // best[i][j]: max energy using indices >= i with at most j spikes
    let mut best = vec![0.0f64; (n + 1) * width];
    for i in (0..n).rev() {
        let after = (i + delta).min(n);
        for j in 1..=k {
            let skip = best[(i + 1) * width + j];
            let take = if gain[i] > 0.0 {
                gain[i] + best[after * width + j - 1]
            } else {
                f64::NEG_INFINITY
            };
            best[i * width + j] = if take >= skip { take } else { skip };
        }
    }
    let mut chosen = Vec::new();
    let (mut i, mut j) = (0, k);
    while i < n && j > 0 {
        let after = (i + delta).min(n);
        if gain[i] > 0.0 && gain[i] + best[after * width + j - 1] == best[i * width + j] {
            chosen.push(i);
            i = after;
            j -= 1;
        } else {
            i += 1;
        }
    }
    let support = Support::from_sorted_unchecked(n, chosen);
    (Signal::restricted(x, &support), support)
}

impl ModelProjection for DispersiveModel {
    fn budget(&self) -> usize {
        self.k
    }

    fn project_with_budget(&self, x: &[f64], budget: usize) -> (Signal, Support) {
        project(x, budget, self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::project_ksparse;

    fn model(n: usize, k: usize, delta: usize) -> DispersiveModel {
        DispersiveModel::new(n, k, delta).unwrap()
    }

    #[test]
    fn separated_pair() {
        let (y, s) = project_dispersive(&[2.0, 3.0, 1.0, 4.0], &model(4, 2, 2));
        assert_eq!(s.indices(), &[1, 3]);
        assert_eq!(&*y, &[0.0, 3.0, 0.0, 4.0]);
    }

    #[test]
    fn equal_values_prefer_two_spikes_lexicographically_first() {
        let (y, s) = project_dispersive(&[5.0, 5.0, 5.0], &model(3, 2, 2));
        assert_eq!(s.indices(), &[0, 2]);
        assert_eq!(&*y, &[5.0, 0.0, 5.0]);
    }

    #[test]
    fn unit_refractory_is_plain_sparsity() {
        let x = [0.3, -2.0, 2.0, 0.0, 1.5, -0.3];
        for k in 1..=6 {
            let (y, _) = project_dispersive(&x, &model(6, k, 1));
            assert_eq!(y, project_ksparse(&x, k));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(DispersiveModel::new(5, 0, 1).is_err());
        assert!(DispersiveModel::new(5, 6, 1).is_err());
        assert!(DispersiveModel::new(5, 2, 0).is_err());
    }
}
