//! Synthetic ground truths, the recovery methods compared on them, and the
//! parallel trial loop.

use std::path::Path;
use std::time::Instant;

use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use sparsity_core::models::{is_dispersive, project_ksparse, DispersiveModel, Tree, TreeModel};
use sparsity_core::operator::haar;
use sparsity_core::prox::{
    build_latent, sliding_windows, DuplicationMap, HierarchicalGroupLasso, LatentExclusive,
    LatentGroupLasso, LatentKind, L1,
};
use sparsity_core::rng::{seeded, SeededRng};
use sparsity_core::solvers::{
    admm_duplication, admm_replicated, chambolle_pock, iht, model_cosamp, PdTerm, SolveResult,
    SolverConfig,
};
use sparsity_core::submodular::{mm_solve, CutFunction, MmConfig, SetFunction};
use sparsity_core::{metrics, LinearOperator, Support};

use crate::error::{invalid, Result};
use crate::pgm::{read_pgm, write_pgm, GrayImage, PgmFormat};
use crate::report::{ExperimentReport, GridRow, ReportRow};
use crate::spec::{ExperimentKind, ExperimentSpec, Method};

/// Expander degree of the wavelet sensing operator.
pub const EXPANDER_DEGREE: usize = 8;

/// Runs every trial of `spec` on the current rayon pool.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    if let Some(dir) = &spec.emit_images {
        std::fs::create_dir_all(dir).map_err(crate::error::io_error(dir))?;
    }
    let image = match (&spec.image, spec.kind) {
        (Some(path), ExperimentKind::Wavelet) => Some(load_wavelet_image(path)?),
        (Some(_), _) => {
            return Err(invalid(
                "an input image only applies to the wavelet experiment",
            ))
        }
        (None, _) => None,
    };
    let outputs: Vec<TrialOutput> = (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let seed = spec.seed.wrapping_add(t as u64);
            match spec.kind {
                ExperimentKind::Spikes | ExperimentKind::SpikesDenoise => {
                    spike_trial(spec, t, seed)
                }
                ExperimentKind::Clustered => clustered_trial(spec, t, seed),
                ExperimentKind::Wavelet => wavelet_trial(spec, t, seed, image.as_ref()),
            }
        })
        .collect::<Result<_>>()?;

    let mut report = ExperimentReport {
        kind: spec.kind,
        rows: Vec::new(),
        grid: Vec::new(),
        notes: Vec::new(),
    };
    for out in outputs {
        report.rows.extend(out.rows);
        report.grid.extend(out.grid);
        for note in out.notes {
            if !report.notes.contains(&note) {
                report.notes.push(note);
            }
        }
    }
    report.rows.sort_by_key(|r| (r.trial, r.method));
    report.grid.sort_by_key(|g| (g.trial, g.method));
    Ok(report)
}

fn expect_kind(spec: &ExperimentSpec, kinds: &[ExperimentKind]) -> Result<()> {
    if kinds.contains(&spec.kind) {
        Ok(())
    } else {
        Err(invalid(format!(
            "spec is for {}, not {}",
            spec.kind, kinds[0]
        )))
    }
}

pub fn run_spikes(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    expect_kind(spec, &[ExperimentKind::Spikes])?;
    run_experiment(spec)
}

pub fn run_spikes_denoise(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    expect_kind(spec, &[ExperimentKind::SpikesDenoise])?;
    run_experiment(spec)
}

pub fn run_clustered(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    expect_kind(spec, &[ExperimentKind::Clustered])?;
    run_experiment(spec)
}

pub fn run_wavelet(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    expect_kind(spec, &[ExperimentKind::Wavelet])?;
    run_experiment(spec)
}

struct TrialOutput {
    rows: Vec<ReportRow>,
    grid: Vec<GridRow>,
    notes: Vec<String>,
}

/// What a method hands back before scoring.
struct Outcome {
    estimate: Vec<f64>,
    iterations: usize,
    converged: bool,
}

impl From<SolveResult> for Outcome {
    fn from(r: SolveResult) -> Self {
        Outcome {
            estimate: r.estimate.into_inner(),
            iterations: r.iterations,
            converged: r.converged,
        }
    }
}

/// Turns an iteration-cap error into a non-converged outcome; other errors
/// propagate.
fn settle(result: sparsity_core::Result<Outcome>, n: usize) -> Result<Outcome> {
    match result {
        Ok(o) => Ok(o),
        Err(sparsity_core::Error::NotConverged { iterations, .. }) => Ok(Outcome {
            estimate: vec![0.0; n],
            iterations,
            converged: false,
        }),
        Err(e) => Err(e.into()),
    }
}

/// Result of one method on one trial, with the sweep that produced it.
struct Scored {
    outcome: Outcome,
    sweep: Vec<(f64, f64, f64, bool)>,
    seconds: f64,
}

/// Runs `solve` over `params` and keeps the outcome with the smallest
/// `score`; earlier parameters win ties.
fn sweep(
    params: &[(f64, f64)],
    score: impl Fn(&[f64]) -> f64,
    solve: impl Fn(f64, f64) -> Result<Outcome>,
) -> Result<Scored> {
    let start = Instant::now();
    let mut best: Option<(f64, Outcome)> = None;
    let mut record = Vec::with_capacity(params.len());
    for &(lambda, tau) in params {
        let out = solve(lambda, tau)?;
        let err = score(&out.estimate);
        record.push((lambda, tau, err, out.converged));
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, out));
        }
    }
    let (_, outcome) = best.ok_or_else(|| invalid("empty parameter grid"))?;
    Ok(Scored {
        outcome,
        sweep: if params.len() > 1 { record } else { Vec::new() },
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn single(solve: impl FnOnce() -> Result<Outcome>) -> Result<Scored> {
    let start = Instant::now();
    let outcome = solve()?;
    Ok(Scored {
        outcome,
        sweep: Vec::new(),
        seconds: start.elapsed().as_secs_f64(),
    })
}

struct Quality {
    rel_error: f64,
    psnr: f64,
    precision: f64,
    recall: f64,
}

fn rel_error(estimate: &[f64], truth: &[f64]) -> f64 {
    let num: f64 = estimate
        .iter()
        .zip(truth)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let den: f64 = truth.iter().map(|b| b * b).sum();
    (num / den).sqrt()
}

/// Precision and recall of the `k` largest entries of `estimate` against
/// the true support.
fn matched_support(estimate: &[f64], truth: &[f64], k: usize) -> (f64, f64) {
    let chosen = project_ksparse(estimate, k).support();
    let actual = Support::from_mask(&truth.iter().map(|v| *v != 0.0).collect::<Vec<_>>());
    let hits = chosen.intersection(&actual).len() as f64;
    let precision = if chosen.is_empty() {
        1.0
    } else {
        hits / chosen.len() as f64
    };
    let recall = if actual.is_empty() {
        1.0
    } else {
        hits / actual.len() as f64
    };
    (precision, recall)
}

fn row(trial: usize, seed: u64, method: Method, scored: &Scored, q: Quality) -> ReportRow {
    ReportRow {
        trial,
        method,
        rel_error: q.rel_error,
        psnr: q.psnr,
        support_precision: q.precision,
        support_recall: q.recall,
        iterations: scored.outcome.iterations,
        wall_time_s: scored.seconds,
        seed,
        converged: scored.outcome.converged,
    }
}

fn grid_rows(trial: usize, method: Method, scored: &Scored) -> impl Iterator<Item = GridRow> + '_ {
    scored
        .sweep
        .iter()
        .map(move |&(lambda, tau, rel_error, converged)| GridRow {
            trial,
            method,
            lambda,
            tau,
            rel_error,
            converged,
        })
}

fn pursuit_config(spec: &ExperimentSpec) -> SolverConfig {
    SolverConfig {
        max_iters: spec.max_iters,
        tol: spec.tol,
        ..SolverConfig::default()
    }
}

fn add_noise(u: &mut [f64], level: f64, rng: &mut SeededRng) {
    if level == 0.0 {
        return;
    }
    let e: Vec<f64> = (0..u.len()).map(|_| rng.sample(StandardNormal)).collect();
    let norm = e.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (ui, ei) in u.iter_mut().zip(&e) {
            *ui += level * ei / norm;
        }
    }
}

/// `m == n` means fully sampled: the identity stands in for a random matrix.
fn gaussian_or_identity(m: usize, n: usize, seed: u64) -> Result<LinearOperator> {
    Ok(if m == n {
        LinearOperator::identity(n)
    } else {
        LinearOperator::gaussian(m, n, seed)?
    })
}

/// Copies of `x` laid out by `map`, as an explicit operator.
fn replication_operator(map: &DuplicationMap) -> Result<LinearOperator> {
    let entries = map
        .origin()
        .iter()
        .enumerate()
        .map(|(l, &i)| (l, i, 1.0))
        .collect();
    Ok(LinearOperator::sparse(
        map.latent_dim(),
        map.dim(),
        entries,
    )?)
}

/// Spike train with `k` spikes at pairwise distance at least `gap` and
/// amplitudes uniform in `[1, 2]`.
pub fn spike_train(n: usize, k: usize, gap: usize, rng: &mut SeededRng) -> Result<Vec<f64>> {
    let slack = (k.max(1) - 1) * (gap - 1);
    if k == 0 || (k - 1) * gap + 1 > n {
        return Err(invalid(format!(
            "{k} spikes with gap {gap} do not fit in length {n}"
        )));
    }
    let mut slots = index::sample(rng, n - slack, k).into_vec();
    slots.sort_unstable();
    let mut x = vec![0.0; n];
    for (j, s) in slots.into_iter().enumerate() {
        x[s + j * (gap - 1)] = rng.random_range(1.0..=2.0);
    }
    Ok(x)
}

fn spike_trial(spec: &ExperimentSpec, trial: usize, seed: u64) -> Result<TrialOutput> {
    let (n, k) = (spec.n, spec.k);
    let mut rng = seeded(seed);
    let truth = spike_train(n, k, spec.delta_true, &mut rng)?;
    let support = Support::from_mask(&truth.iter().map(|v| *v != 0.0).collect::<Vec<_>>());
    assert!(is_dispersive(&support, k, spec.delta_true));
    let op_seed: u64 = rng.random();
    let a = gaussian_or_identity(spec.m, n, op_seed)?;
    let mut u = a.forward(&truth);
    add_noise(&mut u, spec.noise, &mut rng);

    let windows = sliding_windows(n, spec.delta);
    let map = DuplicationMap::from_groups(n, &windows, vec![1.0; windows.len()])?;
    let cfg = pursuit_config(spec);
    let score = |x: &[f64]| rel_error(x, &truth);
    let denoise = spec.kind == ExperimentKind::SpikesDenoise;

    let mut out = TrialOutput {
        rows: Vec::new(),
        grid: Vec::new(),
        notes: Vec::new(),
    };
    for &method in &spec.methods {
        let scored = match method {
            Method::Discrete => single(|| {
                let model = DispersiveModel::new(n, k, spec.delta)?;
                let c = SolverConfig {
                    max_iters: 100,
                    tol: 1e-12,
                    ..SolverConfig::default()
                };
                settle(model_cosamp(&a, &u, &model, &c).map(Outcome::from), n)
            })?,
            Method::Bp => single(|| {
                settle(
                    chambolle_pock(&a, &u, PdTerm::Prox(&L1 { lambda: 1.0 }), &cfg)
                        .map(Outcome::from),
                    n,
                )
            })?,
            Method::ExclusivePursuit => single(|| {
                let r = replication_operator(&map)?;
                let g = LatentExclusive {
                    map: map.clone(),
                    lambda: 1.0,
                };
                settle(
                    chambolle_pock(&a, &u, PdTerm::Composite { op: &r, g: &g }, &cfg)
                        .map(Outcome::from),
                    n,
                )
            })?,
            Method::ExclusiveReg => {
                let params: Vec<(f64, f64)> = spec.lambda_grid.iter().map(|&l| (l, 0.0)).collect();
                sweep(&params, score, |lambda, _| {
                    let g = LatentExclusive {
                        map: map.clone(),
                        lambda,
                    };
                    settle(
                        admm_replicated(&a, &u, &map, &g, &cfg).map(Outcome::from),
                        n,
                    )
                })?
            }
            other => return Err(invalid(format!("method {other} does not apply to spikes"))),
        };
        let x = &scored.outcome.estimate;
        let (precision, recall) = if denoise {
            matched_support(x, &truth, k)
        } else {
            let m = metrics(x, &truth)?;
            (m.support_precision, m.support_recall)
        };
        let q = Quality {
            rel_error: score(x),
            psnr: metrics(x, &truth)?.psnr,
            precision,
            recall,
        };
        out.grid.extend(grid_rows(trial, method, &scored));
        out.rows.push(row(trial, seed, method, &scored, q));
    }
    Ok(out)
}

/// `size × size` image with 2 to 4 axis-aligned constant blobs on a zero
/// background. Intensities are multiples of 1/255 so 8-bit output is exact.
pub fn blob_image(size: usize, rng: &mut SeededRng) -> Vec<f64> {
    let mut img = vec![0.0; size * size];
    let blobs = rng.random_range(2..=4);
    let max_side = (size / 2).max(2);
    for _ in 0..blobs {
        let h = rng.random_range(2..=max_side);
        let w = rng.random_range(2..=max_side);
        let r0 = rng.random_range(0..=size - h);
        let c0 = rng.random_range(0..=size - w);
        let level: u8 = rng.random_range(64..=255);
        for r in r0..r0 + h {
            for c in c0..c0 + w {
                img[r * size + c] = f64::from(level) / 255.0;
            }
        }
    }
    img
}

/// All `3 × 3` patches of a `size × size` grid, stride one.
pub fn patch_groups(size: usize) -> Vec<Vec<usize>> {
    let mut groups = Vec::new();
    for r in 0..size.saturating_sub(2) {
        for c in 0..size.saturating_sub(2) {
            groups.push((0..9).map(|i| (r + i / 3) * size + c + i % 3).collect());
        }
    }
    groups
}

fn clustered_trial(spec: &ExperimentSpec, trial: usize, seed: u64) -> Result<TrialOutput> {
    let s = spec.size;
    let n = s * s;
    let mut rng = seeded(seed);
    let truth = blob_image(s, &mut rng);
    let op_seed: u64 = rng.random();
    let a = gaussian_or_identity(spec.m, n, op_seed)?;
    let mut u = a.forward(&truth);
    add_noise(&mut u, spec.noise, &mut rng);
    let cfg = pursuit_config(spec);
    let score = |x: &[f64]| rel_error(x, &truth);

    let mut out = TrialOutput {
        rows: Vec::new(),
        grid: Vec::new(),
        notes: Vec::new(),
    };
    let mut images = vec![("truth".to_string(), truth.clone())];
    for &method in &spec.methods {
        let scored = match method {
            Method::Ic => {
                let r = SetFunction::cut(CutFunction::lattice(s, s, 1.0)?);
                let params: Vec<(f64, f64)> = spec
                    .lambda_grid
                    .iter()
                    .flat_map(|&l| spec.tau_grid.iter().map(move |&t| (l, t)))
                    .collect();
                sweep(&params, score, |lambda, tau| {
                    let c = MmConfig {
                        lambda,
                        tau,
                        max_iters: spec.max_iters,
                        ..MmConfig::default()
                    };
                    let res = mm_solve(&a, &u, &r, &c, &vec![0.0; n]).map(|m| Outcome {
                        estimate: m.estimate.into_inner(),
                        iterations: m.iterations,
                        converged: m.converged,
                    });
                    settle(res, n)
                })?
            }
            Method::Bp => single(|| {
                settle(
                    chambolle_pock(&a, &u, PdTerm::Prox(&L1 { lambda: 1.0 }), &cfg)
                        .map(Outcome::from),
                    n,
                )
            })?,
            Method::Tv => single(|| {
                let d = LinearOperator::difference_grid(s, s);
                settle(
                    chambolle_pock(
                        &a,
                        &u,
                        PdTerm::Analysis {
                            op: &d,
                            weight: 1.0,
                        },
                        &cfg,
                    )
                    .map(Outcome::from),
                    n,
                )
            })?,
            Method::Ogl => {
                let groups = patch_groups(s);
                let map = DuplicationMap::from_groups(n, &groups, vec![1.0; groups.len()])?;
                let params: Vec<(f64, f64)> = spec.lambda_grid.iter().map(|&l| (l, 0.0)).collect();
                sweep(&params, score, |lambda, _| {
                    let g = LatentGroupLasso {
                        map: map.clone(),
                        lambda,
                    };
                    settle(
                        admm_duplication(&a, &u, &map, &g, &cfg).map(Outcome::from),
                        n,
                    )
                })?
            }
            other => {
                return Err(invalid(format!(
                    "method {other} does not apply to clustered"
                )))
            }
        };
        let x = &scored.outcome.estimate;
        let m = metrics(x, &truth)?;
        let q = Quality {
            rel_error: score(x),
            psnr: m.psnr,
            precision: m.support_precision,
            recall: m.support_recall,
        };
        images.push((method.to_string(), x.clone()));
        out.grid.extend(grid_rows(trial, method, &scored));
        out.rows.push(row(trial, seed, method, &scored, q));
    }
    if let Some(dir) = &spec.emit_images {
        for (name, img) in &images {
            let path = dir.join(format!("clustered_t{trial}_{name}.pgm"));
            write_pgm(&path, &GrayImage::from_unit(s, s, img), PgmFormat::Binary)?;
        }
    }
    Ok(out)
}

fn load_wavelet_image(path: &Path) -> Result<Vec<f64>> {
    let img = read_pgm(path)?;
    let p = img.width;
    if img.height != p || !p.is_power_of_two() || !(2..=64).contains(&p) {
        return Err(invalid(format!(
            "wavelet input must be square with a power-of-two side in 2..=64, got {}x{}",
            img.width, img.height
        )));
    }
    Ok(img.to_unit())
}

/// Haar coefficients supported on a random rooted-connected subtree of
/// `k` nodes, grown from the root by adding uniformly chosen frontier
/// nodes. Magnitudes decay by half per level.
pub fn tree_sparse_coefficients(
    tree: &Tree,
    side: usize,
    k: usize,
    rng: &mut SeededRng,
) -> Vec<f64> {
    let mut coeffs = vec![0.0; tree.len()];
    let mut frontier: Vec<usize> = tree.roots().to_vec();
    for _ in 0..k.min(tree.len()) {
        let pick = frontier.swap_remove(rng.random_range(0..frontier.len()));
        let scale = side as f64 / f64::from(1u32 << tree.level(pick).min(30));
        let magnitude = scale * rng.random_range(0.5..1.5);
        let sign = if tree.parent(pick).is_none() || rng.random::<bool>() {
            1.0
        } else {
            -1.0
        };
        coeffs[pick] = sign * magnitude;
        frontier.extend_from_slice(tree.children(pick));
    }
    coeffs
}

fn log_magnitude(coeffs: &[f64]) -> Vec<f64> {
    let logs: Vec<f64> = coeffs.iter().map(|c| c.abs().ln_1p()).collect();
    let max = logs.iter().cloned().fold(0.0, f64::max);
    logs.iter()
        .map(|v| if max > 0.0 { v / max } else { 0.0 })
        .collect()
}

fn wavelet_trial(
    spec: &ExperimentSpec,
    trial: usize,
    seed: u64,
    image: Option<&Vec<f64>>,
) -> Result<TrialOutput> {
    let p = image.map_or(spec.size, |img| (img.len() as f64).sqrt().round() as usize);
    let n = p * p;
    let m = spec.m.min(n);
    let tree = Tree::wavelet_quadtree(p)?;
    let mut rng = seeded(seed);
    let coeffs = match image {
        Some(img) => {
            let mut c = vec![0.0; n];
            haar::forward(img, p, &mut c);
            c
        }
        None => {
            let c = tree_sparse_coefficients(&tree, p, spec.k, &mut rng);
            let support = Support::from_mask(&c.iter().map(|v| *v != 0.0).collect::<Vec<_>>());
            assert!(tree.is_rooted_connected(&support));
            c
        }
    };
    let mut truth = vec![0.0; n];
    haar::inverse(&coeffs, p, &mut truth);

    let synthesis = LinearOperator::haar2d(p)?.transpose();
    let op_seed: u64 = rng.random();
    let a = if m == n {
        synthesis
    } else {
        LinearOperator::compose(
            LinearOperator::expander(m, n, EXPANDER_DEGREE.min(m), op_seed)?,
            synthesis,
        )?
    };
    let mut u = a.forward(&coeffs);
    add_noise(&mut u, spec.noise, &mut rng);
    let cfg = pursuit_config(spec);
    let to_image = |w: &[f64]| {
        let mut img = vec![0.0; n];
        haar::inverse(w, p, &mut img);
        img
    };

    let mut out = TrialOutput {
        rows: Vec::new(),
        grid: Vec::new(),
        notes: Vec::new(),
    };
    let mut images = vec![("truth".to_string(), coeffs.clone())];
    for &method in &spec.methods {
        let scored = match method {
            Method::Rc => single(|| {
                let model = TreeModel::new(haar::quadtree_parents(p)?, spec.k.min(n))?;
                let c = SolverConfig {
                    max_iters: spec.max_iters,
                    tol: 1e-12,
                    normalized: true,
                    ..SolverConfig::default()
                };
                settle(iht(&a, &u, &model, &c, &vec![0.0; n]).map(Outcome::from), n)
            })?,
            Method::Bp => single(|| {
                settle(
                    chambolle_pock(&a, &u, PdTerm::Prox(&L1 { lambda: 1.0 }), &cfg)
                        .map(Outcome::from),
                    n,
                )
            })?,
            Method::Hgl => single(|| {
                let g = HierarchicalGroupLasso::on_tree(&tree, vec![1.0; n], 1.0)?;
                settle(
                    chambolle_pock(&a, &u, PdTerm::Prox(&g), &cfg).map(Outcome::from),
                    n,
                )
            })?,
            Method::Pc | Method::Fam => single(|| {
                let kind = if method == Method::Pc {
                    LatentKind::ParentChild
                } else {
                    LatentKind::Family
                };
                let map = build_latent(&tree, kind);
                let sum = replication_operator(&map)?.transpose();
                let b = LinearOperator::compose(a.clone(), sum)?;
                let g = LatentGroupLasso {
                    map: map.clone(),
                    lambda: 1.0,
                };
                let res = chambolle_pock(&b, &u, PdTerm::Prox(&g), &cfg).map(|r| {
                    let mut w = vec![0.0; n];
                    map.sum_copies(&r.estimate, &mut w);
                    Outcome {
                        estimate: w,
                        iterations: r.iterations,
                        converged: r.converged,
                    }
                });
                settle(res, n)
            })?,
            other => return Err(invalid(format!("method {other} does not apply to wavelet"))),
        };
        if matches!(method, Method::Pc | Method::Fam) {
            let kind = if method == Method::Pc {
                LatentKind::ParentChild
            } else {
                LatentKind::Family
            };
            let latent = build_latent(&tree, kind).latent_dim();
            out.notes
                .push(format!("{method} latent dimension {latent} (n = {n})"));
        }
        let w = &scored.outcome.estimate;
        let img = to_image(w);
        let m = metrics(&img, &truth)?;
        let support = metrics(w, &coeffs)?;
        let q = Quality {
            rel_error: m.relative_error,
            psnr: m.psnr,
            precision: support.support_precision,
            recall: support.support_recall,
        };
        images.push((method.to_string(), w.clone()));
        out.grid.extend(grid_rows(trial, method, &scored));
        out.rows.push(row(trial, seed, method, &scored, q));
    }
    if let Some(dir) = &spec.emit_images {
        let peak = truth
            .iter()
            .fold(0.0f64, |a, v| a.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let lo = truth.iter().cloned().fold(f64::INFINITY, f64::min).min(0.0);
        for (name, w) in &images {
            let img = to_image(w);
            let path = dir.join(format!("wavelet_t{trial}_{name}.pgm"));
            write_pgm(
                &path,
                &GrayImage::from_range(p, p, &img, lo, peak),
                PgmFormat::Binary,
            )?;
            let path = dir.join(format!("wavelet_t{trial}_{name}_coeffs.pgm"));
            write_pgm(
                &path,
                &GrayImage::from_unit(p, p, &log_magnitude(w)),
                PgmFormat::Binary,
            )?;
        }
    }
    Ok(out)
}
