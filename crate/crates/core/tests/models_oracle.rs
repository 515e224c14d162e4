use proptest::prelude::*;
use rand::Rng;
use sparsity_core::models::{
    dp_loopless_groups, dp_loopless_groups_sparse, greedy_wmc, group_l0, is_dispersive,
    project_dispersive, project_ksparse, project_rc_tree, DispersiveModel, GroupStructure, Tree,
    TreeModel,
};
use sparsity_core::rng::{seeded, SeededRng};
use sparsity_oracles as oracle;

fn integer_signal(rng: &mut SeededRng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let v: i32 = rng.random_range(-3..=3);
            v as f64
        })
        .collect()
}

fn energy(x: &[f64], s: &[usize]) -> f64 {
    s.iter().map(|&i| x[i] * x[i]).sum()
}

fn random_parents(rng: &mut SeededRng, n: usize) -> Vec<Option<usize>> {
    // random labels so parents are not always lower-indexed
    let mut labels: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        labels.swap(i, rng.random_range(0..=i));
    }
    let mut parent = vec![None; n];
    for pos in 1..n {
        if rng.random_bool(0.15) {
            continue; // extra root
        }
        let p = labels[rng.random_range(0..pos)];
        parent[labels[pos]] = Some(p);
    }
    parent
}

/// Random loopless structure: a random tree over groups, 1–2 shared
/// elements per tree edge, 0–2 private elements per group.
pub fn random_loopless(rng: &mut SeededRng, max_groups: usize, max_n: usize) -> GroupStructure {
    loop {
        let m = rng.random_range(1..=max_groups);
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut next = 0usize;
        for g in 1..m {
            if rng.random_bool(0.2) {
                continue;
            }
            let h = rng.random_range(0..g);
            for _ in 0..rng.random_range(1..=2) {
                groups[g].push(next);
                groups[h].push(next);
                next += 1;
            }
        }
        for grp in groups.iter_mut() {
            let extra = if grp.is_empty() {
                rng.random_range(1..=2)
            } else {
                rng.random_range(0..=2)
            };
            for _ in 0..extra {
                grp.push(next);
                next += 1;
            }
        }
        let n = next + rng.random_range(0..=1);
        if n > max_n {
            continue;
        }
        let gs = GroupStructure::unweighted(n, groups).unwrap();
        assert!(gs.is_loopless());
        return gs;
    }
}

#[test]
fn dispersive_matches_exhaustive_search() {
    let mut rng = seeded(11);
    for _ in 0..500 {
        let n = rng.random_range(1..=14);
        let k = rng.random_range(1..=4.min(n));
        let delta = rng.random_range(1..=n.min(5));
        let x = integer_signal(&mut rng, n);
        let c: Vec<f64> = x.iter().map(|v| v * v).collect();
        let (best, arg) = oracle::dispersive(&c, k, delta);
        let (y, s) = project_dispersive(&x, &DispersiveModel::new(n, k, delta).unwrap());
        assert_eq!(energy(&x, s.indices()), best);
        assert_eq!(s.indices(), &arg[..]);
        assert!(is_dispersive(&s, k, delta));
        let (y2, s2) = project_dispersive(&y, &DispersiveModel::new(n, k, delta).unwrap());
        assert_eq!((y2, s2), (y, s));
    }
}

#[test]
fn rc_tree_matches_exhaustive_search() {
    let mut rng = seeded(12);
    for _ in 0..500 {
        let n = rng.random_range(1..=14);
        let k = rng.random_range(0..=4);
        let parent = random_parents(&mut rng, n);
        let x = integer_signal(&mut rng, n);
        let c: Vec<f64> = x.iter().map(|v| v * v).collect();
        let (best, arg) = oracle::rooted_connected(&parent, &c, k);
        let model = TreeModel::new(parent, k).unwrap();
        let (y, s) = project_rc_tree(&x, &model);
        assert_eq!(energy(&x, s.indices()), best);
        assert_eq!(s.indices(), &arg[..]);
        assert!(model.tree.is_rooted_connected(&s));
        let (y2, _) = project_rc_tree(&y, &model);
        assert_eq!(y2, y);
    }
}

#[test]
fn loopless_dp_matches_exhaustive_search() {
    let mut rng = seeded(13);
    for _ in 0..500 {
        let gs = random_loopless(&mut rng, 6, 12);
        let c: Vec<f64> = (0..gs.dim())
            .map(|_| rng.random_range(0..=4) as f64)
            .collect();
        let budget = rng.random_range(1..=gs.len());
        let (best, _) = oracle::max_coverage(&c, gs.groups(), budget);
        let dp = dp_loopless_groups(&c, &gs, budget).unwrap();
        assert_eq!(dp.weight, best);
        assert!(dp.groups.len() <= budget);
        let greedy = greedy_wmc(&c, &gs, budget).unwrap();
        assert!(greedy.weight <= best);
        assert!(greedy.weight >= (1.0 - (-1.0f64).exp()) * best - 1e-12);
    }
}

#[test]
fn sparse_group_dp_matches_exhaustive_search() {
    let mut rng = seeded(14);
    for _ in 0..500 {
        let gs = random_loopless(&mut rng, 5, 10);
        let c: Vec<f64> = (0..gs.dim())
            .map(|_| rng.random_range(0..=5) as f64)
            .collect();
        let budget = rng.random_range(1..=gs.len());
        let k = rng.random_range(1..=gs.dim());
        let best = oracle::sparse_group_selection(&c, gs.groups(), budget, k);
        let dp = dp_loopless_groups_sparse(&c, &gs, budget, k).unwrap();
        assert_eq!(dp.weight, best);
        assert!(dp.support.len() <= k && dp.groups.len() <= budget);
        for &i in dp.support.indices() {
            assert!(dp.groups.iter().any(|&g| gs.group(g).contains(&i)));
        }
    }
}

#[test]
fn group_l0_matches_exhaustive_cover() {
    let mut rng = seeded(15);
    for _ in 0..300 {
        let gs = random_loopless(&mut rng, 6, 12);
        let x: Vec<f64> = (0..gs.dim())
            .map(|_| if rng.random_bool(0.4) { 1.0 } else { 0.0 })
            .collect();
        assert_eq!(
            group_l0(&x, &gs).unwrap(),
            oracle::min_group_cover(&x, gs.groups())
        );
    }
    // loopy structures take the exhaustive path
    for _ in 0..100 {
        let n = 8;
        let m = rng.random_range(1..=6);
        let groups: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let mut g: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.35)).collect();
                if g.is_empty() {
                    g.push(rng.random_range(0..n));
                }
                g
            })
            .collect();
        let gs = GroupStructure::unweighted(n, groups).unwrap();
        let x: Vec<f64> = (0..n)
            .map(|_| if rng.random_bool(0.4) { 1.0 } else { 0.0 })
            .collect();
        assert_eq!(
            group_l0(&x, &gs).unwrap(),
            oracle::min_group_cover(&x, gs.groups())
        );
    }
}

#[test]
fn rc_projection_on_wavelet_tree_is_rooted() {
    let tree = Tree::wavelet_quadtree(16).unwrap();
    let mut rng = seeded(3);
    let x: Vec<f64> = (0..256).map(|_| rng.random::<f64>() - 0.5).collect();
    let model = TreeModel { tree, k: 40 };
    let (_, s) = project_rc_tree(&x, &model);
    assert_eq!(s.len(), 40);
    assert!(model.tree.is_rooted_connected(&s));
}

proptest! {
    #[test]
    fn unit_refractory_equals_ksparse(x in proptest::collection::vec(-5i32..5, 1..20), k in 1usize..6) {
        let x: Vec<f64> = x.into_iter().map(f64::from).collect();
        let k = k.min(x.len());
        let model = DispersiveModel::new(x.len(), k, 1).unwrap();
        let (y, s) = project_dispersive(&x, &model);
        let z = project_ksparse(&x, k);
        prop_assert_eq!(&y, &z);
        prop_assert_eq!(s, z.support());
    }

    #[test]
    fn ksparse_idempotent(x in proptest::collection::vec(-1e3f64..1e3, 1..30), k in 0usize..10) {
        let y = project_ksparse(&x, k);
        prop_assert_eq!(project_ksparse(&y, k), y.clone());
        prop_assert!(y.support().len() <= k);
    }
}
