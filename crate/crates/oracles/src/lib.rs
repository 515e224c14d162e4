//! Brute-force reference implementations. Everything here enumerates the
//! feasible set directly and shares no code with `sparsity-core`; it exists
//! only to check the fast algorithms.

/// All subsets of `0..n` as sorted index lists, in mask order.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < 26, "too many subsets");
    (0u32..(1u32 << n)).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

fn value(c: &[f64], set: &[usize]) -> f64 {
    set.iter().map(|&i| c[i]).sum()
}

/// Keeps the better of two candidates: larger value, then smaller size,
/// then lexicographically smaller.
fn better(cand: (f64, Vec<usize>), best: &mut Option<(f64, Vec<usize>)>, size_first: bool) {
    let replace = match best {
        None => true,
        Some((bv, bs)) => {
            if cand.0 != *bv {
                cand.0 > *bv
            } else if size_first && cand.1.len() != bs.len() {
                cand.1.len() < bs.len()
            } else {
                cand.1 < *bs
            }
        }
    };
    if replace {
        *best = Some(cand);
    }
}

/// Best support with `≤ k` indices pairwise `≥ delta` apart, maximizing the
/// sum of `c` (entries with `c = 0` excluded); lexicographically smallest
/// among optima.
pub fn dispersive(c: &[f64], k: usize, delta: usize) -> (f64, Vec<usize>) {
    let mut best = None;
    for s in subsets(c.len()) {
        if s.len() > k || s.iter().any(|&i| c[i] == 0.0) {
            continue;
        }
        if s.windows(2).any(|w| w[1] - w[0] < delta) {
            continue;
        }
        better((value(c, &s), s), &mut best, false);
    }
    best.unwrap()
}

/// Best rooted-connected support of size `≤ k`; smallest then
/// lexicographically smallest among optima.
pub fn rooted_connected(parent: &[Option<usize>], c: &[f64], k: usize) -> (f64, Vec<usize>) {
    let mut best = None;
    for s in subsets(c.len()) {
        if s.len() > k {
            continue;
        }
        if s.iter()
            .any(|&v| parent[v].is_some_and(|p| !s.contains(&p)))
        {
            continue;
        }
        better((value(c, &s), s), &mut best, true);
    }
    best.unwrap()
}

/// Covered weight of a group selection.
pub fn coverage(c: &[f64], groups: &[Vec<usize>], chosen: &[usize]) -> f64 {
    let mut covered = vec![false; c.len()];
    for &g in chosen {
        for &i in &groups[g] {
            covered[i] = true;
        }
    }
    (0..c.len()).filter(|&i| covered[i]).map(|i| c[i]).sum()
}

/// Maximum coverage over all selections of at most `budget` groups.
pub fn max_coverage(c: &[f64], groups: &[Vec<usize>], budget: usize) -> (f64, Vec<usize>) {
    let mut best = None;
    for s in subsets(groups.len()) {
        if s.len() <= budget {
            better((coverage(c, groups, &s), s), &mut best, true);
        }
    }
    best.unwrap()
}

/// Sparse group selection: at most `budget` groups and `max_elements`
/// elements, each element covered by a chosen group.
pub fn sparse_group_selection(
    c: &[f64],
    groups: &[Vec<usize>],
    budget: usize,
    max_elements: usize,
) -> f64 {
    let mut best = 0.0f64;
    for s in subsets(groups.len()) {
        if s.len() > budget {
            continue;
        }
        let mut covered: Vec<f64> = (0..c.len())
            .filter(|&i| s.iter().any(|&g| groups[g].contains(&i)))
            .map(|i| c[i])
            .collect();
        covered.sort_by(|a, b| b.total_cmp(a));
        best = best.max(covered.iter().take(max_elements).sum());
    }
    best
}

/// Minimum number of groups covering the nonzero pattern of `x`.
pub fn min_group_cover(x: &[f64], groups: &[Vec<usize>]) -> Option<usize> {
    subsets(groups.len())
        .filter(|s| {
            (0..x.len())
                .filter(|&i| x[i] != 0.0)
                .all(|i| s.iter().any(|&g| groups[g].contains(&i)))
        })
        .map(|s| s.len())
        .min()
}

/// Weighted total variation `Σ w |x_i − x_j|` over an edge list.
pub fn graph_tv(edges: &[(usize, usize, f64)], x: &[f64]) -> f64 {
    edges.iter().map(|&(i, j, w)| w * (x[i] - x[j]).abs()).sum()
}

/// Minimum of a set function over all subsets: `(value, minimizers)`.
pub fn set_function_minimizers(n: usize, f: impl Fn(&[bool]) -> f64) -> (f64, Vec<Vec<usize>>) {
    let mut best = f64::INFINITY;
    let mut arg = Vec::new();
    for s in subsets(n) {
        let mut mask = vec![false; n];
        s.iter().for_each(|&i| mask[i] = true);
        let v = f(&mask);
        if v < best {
            best = v;
            arg = vec![s];
        } else if v == best {
            arg.push(s);
        }
    }
    (best, arg)
}

/// Minimizes a convex function of one variable on `[lo, hi]` by golden
/// section search.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..iters {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}

/// Root of an increasing function on `[lo, hi]` by bisection.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Minimizes a convex function of two variables on a box by nested golden
/// section: the inner minimum is itself convex in the outer variable.
pub fn golden_section_2d(
    f: impl Fn(f64, f64) -> f64,
    (lo0, hi0): (f64, f64),
    (lo1, hi1): (f64, f64),
    iters: usize,
) -> (f64, f64) {
    let inner = |a: f64| golden_section(|b| f(a, b), lo1, hi1, iters);
    let a = golden_section(|a| f(a, inner(a)), lo0, hi0, iters);
    (a, inner(a))
}

/// Minimizes a convex function on ℝⁿ by cyclic coordinate golden-section
/// search within `±radius` of the current point. Slow but assumption-free.
pub fn coordinate_descent(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    radius: f64,
    sweeps: usize,
) -> Vec<f64> {
    let mut x = start.to_vec();
    let mut r = radius;
    for _ in 0..sweeps {
        for i in 0..x.len() {
            let center = x[i];
            let best = golden_section(
                |t| {
                    let mut y = x.clone();
                    y[i] = t;
                    f(&y)
                },
                center - r,
                center + r,
                80,
            );
            x[i] = best;
        }
        r *= 0.7;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispersive_reference_cases() {
        let c: Vec<f64> = [2.0f64, 3.0, 1.0, 4.0].iter().map(|v| v * v).collect();
        assert_eq!(dispersive(&c, 2, 2), (25.0, vec![1, 3]));
        assert_eq!(dispersive(&[25.0; 3], 2, 2), (50.0, vec![0, 2]));
    }

    #[test]
    fn rooted_connected_reference() {
        let parent = [None, Some(0), Some(0)];
        assert_eq!(
            rooted_connected(&parent, &[1.0, 9.0, 4.0], 2),
            (10.0, vec![0, 1])
        );
        assert_eq!(
            rooted_connected(&parent, &[1.0, 9.0, 4.0], 1),
            (1.0, vec![0])
        );
    }

    #[test]
    fn coverage_reference() {
        let groups = vec![(0..5).collect(), (3..8).collect(), (6..11).collect()];
        let mut c = vec![0.0; 11];
        for i in [2, 3, 4, 6, 7, 8] {
            c[i] = 1.0;
        }
        assert_eq!(max_coverage(&c, &groups, 2), (6.0, vec![0, 2]));
    }

    #[test]
    fn golden_section_quadratic() {
        let t = golden_section(|t| (t - 0.3) * (t - 0.3), -1.0, 1.0, 100);
        assert!((t - 0.3).abs() < 1e-9);
    }
}
