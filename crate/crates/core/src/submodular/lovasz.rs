use alloc::vec;
use alloc::vec::Vec;

use super::SetFunction;
use crate::linalg::dot;

/// Lovász extension `r(x) = Σ_k x_{j_k} (R({j_1..j_k}) − R({j_1..j_{k−1}}))`
/// with coordinates sorted in decreasing order (ties by index).
pub fn lovasz_extension(r: &SetFunction, x: &[f64]) -> f64 {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]));
    let mut q = vec![0.0; x.len()];
    r.greedy_vertex(&order, &mut q);
    dot(x, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodular::CutFunction;

    #[test]
    fn cardinality_telescopes_to_sum() {
        let v = lovasz_extension(&SetFunction::cardinality(3), &[0.5, 0.2, 0.3]);
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chain_cut_is_total_variation() {
        let r = SetFunction::cut(CutFunction::chain(3, 1.0).unwrap());
        assert_eq!(lovasz_extension(&r, &[1.0, 0.0, 2.0]), 3.0);
    }

    #[test]
    fn indicator_vectors_recover_set_values() {
        let r = SetFunction::generic(4, |s| {
            let k = s.iter().filter(|b| **b).count() as f64;
            (k * (5.0 - k)).sqrt() + if s[1] { 0.5 } else { 0.0 }
        });
        for m in 0..16u32 {
            let set: Vec<bool> = (0..4).map(|i| m >> i & 1 == 1).collect();
            let x: Vec<f64> = set.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
            assert!((lovasz_extension(&r, &x) - r.eval(&set)).abs() < 1e-12);
        }
    }
}
