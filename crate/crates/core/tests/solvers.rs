use rand::Rng;
use rand_distr::StandardNormal;
use sparsity_core::models::{is_dispersive, DispersiveModel, KSparse};
use sparsity_core::prox::{
    sliding_windows, soft_threshold, DuplicationMap, GroupLasso, LatentExclusive, LatentGroupLasso,
    Prox, L1,
};
use sparsity_core::rng::{seeded, SeededRng};
use sparsity_core::solvers::{
    admm_duplication, admm_replicated, chambolle_pock, fista, iht, ista, model_cosamp,
    LeastSquares, PdTerm, SmoothObjective, SolverConfig,
};
use sparsity_core::{lipschitz_estimate, LinearOperator, Support};

fn sparse_signal(rng: &mut SeededRng, n: usize, k: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for i in rand::seq::index::sample(rng, n, k) {
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        x[i] = sign * rng.random_range(0.5..1.5);
    }
    x
}

fn rel_error(a: &[f64], b: &[f64]) -> f64 {
    let d: f64 = a
        .iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt();
    d / b.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn tight(max_iters: usize, tol: f64) -> SolverConfig {
    SolverConfig {
        max_iters,
        tol,
        ..SolverConfig::default()
    }
}

#[test]
fn iht_fixed_point_at_zero() {
    let a = LinearOperator::gaussian(5, 10, 1).unwrap();
    let r = iht(
        &a,
        &[0.0; 5],
        &KSparse { k: 2 },
        &SolverConfig::default(),
        &[0.0; 10],
    )
    .unwrap();
    assert_eq!(r.iterations, 1);
    assert!(r.estimate.iter().all(|v| *v == 0.0));
}

#[test]
fn normalized_iht_descends_and_recovers_more_often() {
    let (mut fixed, mut normalized) = (0, 0);
    for seed in 0..100 {
        let mut rng = seeded(seed);
        let x = sparse_signal(&mut rng, 20, 3);
        let a = LinearOperator::gaussian(12, 20, 900 + seed).unwrap();
        let u = a.forward(&x);
        let model = KSparse { k: 3 };
        let plain = iht(&a, &u, &model, &tight(20_000, 1e-12), &[0.0; 20]).unwrap();
        let cfg = SolverConfig {
            normalized: true,
            trace: true,
            ..tight(20_000, 1e-12)
        };
        let adaptive = iht(&a, &u, &model, &cfg, &[0.0; 20]).unwrap();
        let start = 0.5 * u.iter().map(|v| v * v).sum::<f64>();
        let mut prev = start;
        for &f in &adaptive.trace {
            assert!(f <= prev + 1e-12 * start, "seed {seed}: {f} > {prev}");
            prev = f;
        }
        fixed += usize::from(rel_error(&plain.estimate, &x) < 1e-6);
        normalized += usize::from(rel_error(&adaptive.estimate, &x) < 1e-6);
    }
    assert!(normalized > fixed);
}

#[test]
fn iht_and_cosamp_agree_when_both_recover() {
    let mut agreements = 0;
    for seed in 0..50 {
        let mut rng = seeded(seed);
        let x = sparse_signal(&mut rng, 20, 3);
        let a = LinearOperator::gaussian(16, 20, 500 + seed).unwrap();
        let u = a.forward(&x);
        let model = KSparse { k: 3 };
        let r1 = iht(&a, &u, &model, &tight(20_000, 1e-12), &[0.0; 20]).unwrap();
        let r2 = model_cosamp(&a, &u, &model, &tight(100, 1e-12)).unwrap();
        if rel_error(&r1.estimate, &x) < 1e-6 && rel_error(&r2.estimate, &x) < 1e-6 {
            assert_eq!(r1.estimate.support(), r2.estimate.support());
            agreements += 1;
        }
    }
    assert!(agreements > 10);
}

#[test]
fn dispersive_iht_beats_plain_iht() {
    let (n, m, k, delta) = (100, 40, 8, 6);
    let (mut plain, mut structured) = (0, 0);
    for seed in 0..40 {
        let mut rng = seeded(seed);
        let mut x = vec![0.0; n];
        // k spikes with gaps ≥ Δ: choose k positions among n − (k−1)(Δ−1).
        let slots = n - (k - 1) * (delta - 1);
        let mut pos: Vec<usize> = rand::seq::index::sample(&mut rng, slots, k).into_vec();
        pos.sort();
        for (j, p) in pos.iter().enumerate() {
            x[p + j * (delta - 1)] = rng.random_range(1.0..2.0);
        }
        assert!(is_dispersive(
            &Support::from_mask(&x.iter().map(|v| *v != 0.0).collect::<Vec<_>>()),
            k,
            delta
        ));
        let a = LinearOperator::gaussian(m, n, 900 + seed).unwrap();
        let u = a.forward(&x);
        let cfg = tight(5000, 1e-10);
        let r = iht(&a, &u, &KSparse { k }, &cfg, &vec![0.0; n]).unwrap();
        plain += (rel_error(&r.estimate, &x) < 1e-4) as usize;
        let model = DispersiveModel::new(n, k, delta).unwrap();
        let r = iht(&a, &u, &model, &cfg, &vec![0.0; n]).unwrap();
        structured += (rel_error(&r.estimate, &x) < 1e-4) as usize;
    }
    assert!(
        structured > plain,
        "dispersive {structured} vs k-sparse {plain}"
    );
}

#[test]
fn cosamp_recovers_small_gaussian_instances() {
    let mut recovered = 0;
    for seed in 0..100 {
        let mut rng = seeded(seed);
        let x = sparse_signal(&mut rng, 20, 3);
        let a = LinearOperator::gaussian(12, 20, 1000 + seed).unwrap();
        let u = a.forward(&x);
        let r = model_cosamp(&a, &u, &KSparse { k: 3 }, &tight(20, 1e-12)).unwrap();
        if rel_error(&r.estimate, &x) < 1e-6 {
            recovered += 1;
            assert!(r.iterations <= 20);
        }
    }
    assert!(recovered >= 85, "recovered {recovered}/100");
}

#[test]
fn cosamp_zero_signal() {
    let a = LinearOperator::gaussian(8, 20, 3).unwrap();
    let r = model_cosamp(&a, &[0.0; 8], &KSparse { k: 3 }, &SolverConfig::default()).unwrap();
    assert!(r.estimate.iter().all(|v| *v == 0.0));
}

#[test]
fn fista_identity_lasso_is_one_prox_step() {
    let a = LinearOperator::identity(5);
    let u = [3.0, -0.2, 0.5, -2.0, 0.0];
    let f = LeastSquares { a: &a, u: &u };
    let r = fista(&f, 1.0, &L1 { lambda: 0.4 }, &tight(10, 1e-12), &[0.0; 5]).unwrap();
    let expect = soft_threshold(&u, 0.4);
    for (p, q) in r.estimate.iter().zip(expect.iter()) {
        assert!((p - q).abs() < 1e-15);
    }
}

fn random_lasso(seed: u64) -> (LinearOperator, Vec<f64>) {
    let mut rng = seeded(seed);
    let a = LinearOperator::gaussian(25, 50, seed).unwrap();
    let u: Vec<f64> = (0..25).map(|_| rng.sample(StandardNormal)).collect();
    (a, u)
}

#[test]
fn fista_matches_long_ista_run() {
    for seed in 0..5 {
        let (a, u) = random_lasso(seed);
        let f = LeastSquares { a: &a, u: &u };
        let l = lipschitz_estimate(&a, 200) * 1.01;
        let g = L1 { lambda: 0.1 };
        let fast = fista(&f, l, &g, &tight(5000, 1e-9), &[0.0; 50]).unwrap();
        let slow = ista(
            &f,
            l,
            &g,
            &tight(10 * fast.iterations.max(5000), 1e-12),
            &[0.0; 50],
        )
        .unwrap();
        assert!(
            (fast.objective - slow.objective).abs() < 1e-8,
            "{} vs {}",
            fast.objective,
            slow.objective
        );
    }
}

#[test]
fn fista_satisfies_optimality_conditions() {
    let (a, u) = random_lasso(11);
    let f = LeastSquares { a: &a, u: &u };
    let lambda = 0.1;
    let l = lipschitz_estimate(&a, 200) * 1.01;
    let r = fista(&f, l, &L1 { lambda }, &tight(20_000, 1e-9), &[0.0; 50]).unwrap();
    assert!(r.converged);
    let mut grad = vec![0.0; 50];
    f.value_and_gradient(&r.estimate, &mut grad);
    // Distance from −∇f(x) to λ∂‖x‖₁.
    let residual: f64 = r
        .estimate
        .iter()
        .zip(&grad)
        .map(|(&x, &g)| {
            if x != 0.0 {
                (g + lambda * x.signum()).abs()
            } else {
                (g.abs() - lambda).max(0.0)
            }
        })
        .map(|e| e * e)
        .sum::<f64>()
        .sqrt();
    assert!(residual < 1e-6, "{residual}");
}

#[test]
fn ista_and_restarted_fista_are_monotone() {
    let (a, u) = random_lasso(4);
    let f = LeastSquares { a: &a, u: &u };
    let l = lipschitz_estimate(&a, 200) * 1.01;
    let cfg = SolverConfig {
        trace: true,
        ..tight(500, 1e-12)
    };
    for r in [
        ista(&f, l, &L1 { lambda: 0.05 }, &cfg, &[0.0; 50]).unwrap(),
        fista(&f, l, &L1 { lambda: 0.05 }, &cfg, &[0.0; 50]).unwrap(),
    ] {
        assert!(r.trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }
}

#[test]
fn basis_pursuit_recovers_sparse_signals() {
    let mut recovered = 0;
    for seed in 0..30 {
        let mut rng = seeded(seed);
        let x = sparse_signal(&mut rng, 40, 4);
        let a = LinearOperator::gaussian(20, 40, 2000 + seed).unwrap();
        let u = a.forward(&x);
        let r = chambolle_pock(
            &a,
            &u,
            PdTerm::Prox(&L1 { lambda: 1.0 }),
            &tight(100_000, 1e-9),
        )
        .unwrap();
        assert!(r.residual <= 1e-9 * u.iter().map(|v| v * v).sum::<f64>().sqrt() || !r.converged);
        recovered += (rel_error(&r.estimate, &x) < 1e-4) as usize;
    }
    assert!(recovered >= 27);
}

#[test]
fn pursuit_with_zero_data() {
    let a = LinearOperator::gaussian(5, 10, 2).unwrap();
    let r = chambolle_pock(
        &a,
        &[0.0; 5],
        PdTerm::Prox(&L1 { lambda: 1.0 }),
        &SolverConfig::default(),
    )
    .unwrap();
    assert!(r.estimate.iter().all(|v| *v == 0.0));
}

#[test]
fn primal_dual_rejects_large_steps() {
    let a = LinearOperator::identity(3);
    let cfg = SolverConfig {
        sigma: Some(1.0),
        tau: Some(1.5),
        ..SolverConfig::default()
    };
    assert!(chambolle_pock(&a, &[1.0; 3], PdTerm::Prox(&L1 { lambda: 1.0 }), &cfg).is_err());
}

#[test]
fn tv_pursuit_recovers_piecewise_constant_image() {
    let side = 8;
    let mut img = vec![0.0; side * side];
    for r in 0..side {
        for c in 0..side {
            img[r * side + c] = if c < 3 {
                1.0
            } else if r < 4 {
                2.0
            } else {
                0.5
            };
        }
    }
    let a = LinearOperator::gaussian(32, 64, 17).unwrap();
    let u = a.forward(&img);
    let d = LinearOperator::difference_grid(side, side);
    let r = chambolle_pock(
        &a,
        &u,
        PdTerm::Analysis {
            op: &d,
            weight: 1.0,
        },
        &tight(200_000, 1e-10),
    )
    .unwrap();
    assert!(
        rel_error(&r.estimate, &img) < 1e-3,
        "{}",
        rel_error(&r.estimate, &img)
    );
}

#[test]
fn composite_term_matches_analysis_clamp() {
    let n = 24;
    let a = LinearOperator::gaussian(12, n, 23).unwrap();
    let x: Vec<f64> = (0..n).map(|i| if i < 10 { 1.0 } else { -0.5 }).collect();
    let u = a.forward(&x);
    let d = LinearOperator::difference_chain(n);
    let cfg = tight(100_000, 1e-11);
    let clamp = chambolle_pock(
        &a,
        &u,
        PdTerm::Analysis {
            op: &d,
            weight: 1.0,
        },
        &cfg,
    )
    .unwrap();
    let l1 = L1 { lambda: 1.0 };
    let moreau = chambolle_pock(&a, &u, PdTerm::Composite { op: &d, g: &l1 }, &cfg).unwrap();
    assert!(rel_error(&clamp.estimate, &moreau.estimate) < 1e-6);
    assert!((clamp.objective - moreau.objective).abs() < 1e-6 * clamp.objective.max(1.0));
}

#[test]
fn admm_single_group_matches_fista() {
    let (a, u) = random_lasso(8);
    let map = DuplicationMap::from_groups(50, &[(0..50).collect()], vec![1.0]).unwrap();
    let lambda = 0.3;
    let latent = LatentGroupLasso {
        map: map.clone(),
        lambda,
    };
    let r = admm_duplication(&a, &u, &map, &latent, &tight(5000, 1e-9)).unwrap();
    let f = LeastSquares { a: &a, u: &u };
    let group = GroupLasso::new(50, vec![(0..50).collect()], vec![1.0], lambda).unwrap();
    let l = lipschitz_estimate(&a, 200) * 1.01;
    let reference = fista(&f, l, &group, &tight(20_000, 1e-10), &[0.0; 50]).unwrap();
    let admm_obj = f.value(&r.estimate) + group.penalty(&r.estimate);
    assert!(
        (admm_obj - reference.objective).abs() < 1e-5,
        "{admm_obj} vs {}",
        reference.objective
    );
}

#[test]
fn replicated_admm_on_a_partition_matches_fista() {
    let (a, u) = random_lasso(31);
    let groups: Vec<Vec<usize>> = (0..10).map(|g| (5 * g..5 * g + 5).collect()).collect();
    let map = DuplicationMap::from_groups(50, &groups, vec![1.0; 10]).unwrap();
    let lambda = 0.4;
    let latent = LatentGroupLasso {
        map: map.clone(),
        lambda,
    };
    let r = admm_replicated(&a, &u, &map, &latent, &tight(5000, 1e-9)).unwrap();
    let f = LeastSquares { a: &a, u: &u };
    let group = GroupLasso::new(50, groups, vec![1.0; 10], lambda).unwrap();
    let l = lipschitz_estimate(&a, 200) * 1.01;
    let reference = fista(&f, l, &group, &tight(20_000, 1e-10), &[0.0; 50]).unwrap();
    assert!(
        (r.objective - reference.objective).abs() < 1e-6,
        "{} vs {}",
        r.objective,
        reference.objective
    );
}

#[test]
fn replicated_admm_exclusive_beats_perturbations() {
    let n = 30;
    let a = LinearOperator::gaussian(15, n, 41).unwrap();
    let mut x = vec![0.0; n];
    x[3] = 1.5;
    x[14] = 1.0;
    x[26] = 2.0;
    let u = a.forward(&x);
    let map = DuplicationMap::from_groups(n, &sliding_windows(n, 5), vec![1.0; n - 4]).unwrap();
    let penalty = LatentExclusive {
        map: map.clone(),
        lambda: 0.05,
    };
    let r = admm_replicated(&a, &u, &map, &penalty, &tight(20_000, 1e-10)).unwrap();
    assert!(r.converged);
    let objective = |x: &[f64]| {
        let mut copies = vec![0.0; map.latent_dim()];
        map.replicate(x, &mut copies);
        let res: f64 = a
            .forward(x)
            .iter()
            .zip(&u)
            .map(|(p, q)| (p - q) * (p - q))
            .sum();
        0.5 * res + penalty.penalty(&copies)
    };
    let best = objective(&r.estimate);
    assert!((best - r.objective).abs() < 1e-12 * best.max(1.0));
    let mut rng = seeded(5);
    for trial in 0..1000 {
        let scale = 10f64.powi(-(trial % 6));
        let cand: Vec<f64> = r
            .estimate
            .iter()
            .map(|v| v + scale * rng.sample::<f64, _>(StandardNormal))
            .collect();
        assert!(objective(&cand) >= best - 1e-9, "trial {trial}");
    }
}

#[test]
fn admm_without_penalty_is_least_squares() {
    let a = LinearOperator::gaussian(30, 10, 5).unwrap();
    let x: Vec<f64> = (0..10).map(|i| i as f64 - 4.5).collect();
    let u = a.forward(&x);
    let groups: Vec<Vec<usize>> = (0..9).map(|i| vec![i, i + 1]).collect();
    let map = DuplicationMap::from_groups(10, &groups, vec![1.0; 9]).unwrap();
    let latent = LatentGroupLasso {
        map: map.clone(),
        lambda: 0.0,
    };
    let r = admm_duplication(&a, &u, &map, &latent, &tight(5000, 1e-10)).unwrap();
    assert!(rel_error(&r.estimate, &x) < 1e-6);
}

#[test]
fn appendix_latent_support_excludes_middle_group() {
    let x = [0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0];
    let groups = vec![(0..5).collect(), (3..8).collect(), (6..11).collect()];
    let map = DuplicationMap::from_groups(11, &groups, vec![1.0, 1.5, 1.0]).unwrap();
    let a = LinearOperator::identity(11);
    let latent = LatentGroupLasso {
        map: map.clone(),
        lambda: 0.01,
    };
    let r = admm_duplication(&a, &x, &map, &latent, &tight(20_000, 1e-10)).unwrap();
    let v = r.latent.unwrap();
    let middle: f64 = v[map.block(1)].iter().map(|a| a * a).sum::<f64>().sqrt();
    let xn = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    assert!(middle < 1e-4 * xn, "{middle}");
    let mut summed = vec![0.0; 11];
    map.sum_copies(&v, &mut summed);
    assert!(rel_error(&summed, &x) < 0.05);
}

#[test]
fn solvers_are_deterministic() {
    let mut rng = seeded(3);
    let x = sparse_signal(&mut rng, 40, 4);
    let a = LinearOperator::gaussian(20, 40, 3).unwrap();
    let u = a.forward(&x);
    let run = || {
        let cfg = SolverConfig {
            trace: true,
            ..tight(300, 1e-9)
        };
        let r1 = chambolle_pock(&a, &u, PdTerm::Prox(&L1 { lambda: 1.0 }), &cfg).unwrap();
        let r2 = iht(&a, &u, &KSparse { k: 4 }, &cfg, &vec![0.0; 40]).unwrap();
        (r1.trace, r1.estimate, r2.estimate)
    };
    let (a1, b1, c1) = run();
    let (a2, b2, c2) = run();
    assert_eq!(a1, a2);
    assert_eq!(b1, b2);
    assert_eq!(c1, c2);
}
