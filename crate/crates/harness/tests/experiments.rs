use std::path::Path;
use std::process::Command;

use sparsity_core::rng::seeded;
use sparsity_harness::experiments::{blob_image, patch_groups, spike_train};
use sparsity_harness::pgm::{read_pgm, write_pgm, GrayImage, PgmFormat};
use sparsity_harness::{
    run_clustered, run_spikes, run_spikes_denoise, run_wavelet, run_with_threads, ExperimentKind,
    ExperimentReport, ExperimentSpec, HarnessError, Method, Settings, CSV_HEADER,
};

fn spec(kind: ExperimentKind, pairs: &[(&str, &str)]) -> ExperimentSpec {
    let mut s = Settings::default();
    for (k, v) in pairs {
        s.set(k, *v);
    }
    ExperimentSpec::from_settings(kind, &s).unwrap()
}

fn csv_without_timing(report: &ExperimentReport) -> String {
    let mut buf = Vec::new();
    report.write_csv(&mut buf).unwrap();
    String::from_utf8(buf)
        .unwrap()
        .lines()
        .map(|line| {
            let mut cols: Vec<&str> = line.split(',').collect();
            cols.remove(7);
            cols.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn spike_trains_respect_the_gap() {
    for seed in 0..50 {
        let x = spike_train(200, 9, 20, &mut seeded(seed)).unwrap();
        let idx: Vec<usize> = (0..200).filter(|&i| x[i] != 0.0).collect();
        assert_eq!(idx.len(), 9);
        assert!(idx.windows(2).all(|w| w[1] - w[0] >= 20));
        assert!(idx.iter().all(|&i| (1.0..=2.0).contains(&x[i])));
    }
    // 9 spikes with gap 25 need 201 samples
    assert!(spike_train(200, 9, 25, &mut seeded(0)).is_err());
    assert!(spike_train(201, 9, 25, &mut seeded(0)).is_ok());
}

#[test]
fn fully_sampled_spikes_are_recovered_by_every_method() {
    let s = spec(
        ExperimentKind::Spikes,
        &[
            ("n", "120"),
            ("m", "120"),
            ("k", "5"),
            ("trials", "2"),
            ("tol", "1e-10"),
            ("lambda-grid", "1e-10"),
            ("max-iters", "200000"),
        ],
    );
    let report = run_spikes(&s).unwrap();
    assert_eq!(report.rows.len(), 8);
    for r in &report.rows {
        assert!(r.rel_error < 1e-6, "{} {}", r.method, r.rel_error);
    }
}

#[test]
fn infeasible_spike_layout_is_an_invalid_parameter() {
    let mut s = Settings::default();
    s.set("n", "100");
    s.set("m", "50");
    s.set("k", "10");
    let err = ExperimentSpec::from_settings(ExperimentKind::Spikes, &s).unwrap_err();
    assert!(matches!(err, HarnessError::Invalid(_)));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn noiseless_denoising_is_exact_for_the_discrete_method() {
    let s = spec(
        ExperimentKind::SpikesDenoise,
        &[("noise", "0"), ("methods", "discrete"), ("trials", "5")],
    );
    let report = run_spikes_denoise(&s).unwrap();
    for r in &report.rows {
        assert!(r.rel_error < 1e-10);
        assert_eq!((r.support_precision, r.support_recall), (1.0, 1.0));
    }
}

#[test]
fn denoising_recall_of_the_discrete_method_is_not_beaten() {
    let s = spec(
        ExperimentKind::SpikesDenoise,
        &[("trials", "4"), ("max-iters", "2000")],
    );
    let report = run_spikes_denoise(&s).unwrap();
    let mean_recall = |m: Method| {
        let rows: Vec<_> = report.rows_for(m).collect();
        rows.iter().map(|r| r.support_recall).sum::<f64>() / rows.len() as f64
    };
    let discrete = mean_recall(Method::Discrete);
    for m in [Method::Bp, Method::ExclusiveReg, Method::ExclusivePursuit] {
        assert!(discrete >= mean_recall(m), "{m}");
    }
    let mut buf = Vec::new();
    report.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8(buf)
        .unwrap()
        .starts_with(&CSV_HEADER.join(",")));
}

#[test]
fn reports_are_identical_across_reruns_and_thread_counts() {
    let cases = [
        spec(
            ExperimentKind::Spikes,
            &[
                ("n", "120"),
                ("m", "40"),
                ("k", "4"),
                ("trials", "3"),
                ("max-iters", "300"),
            ],
        ),
        spec(
            ExperimentKind::SpikesDenoise,
            &[
                ("n", "120"),
                ("k", "4"),
                ("trials", "3"),
                ("max-iters", "300"),
            ],
        ),
        spec(
            ExperimentKind::Clustered,
            &[
                ("size", "8"),
                ("m", "30"),
                ("trials", "3"),
                ("max-iters", "300"),
            ],
        ),
        spec(
            ExperimentKind::Wavelet,
            &[
                ("size", "8"),
                ("k", "8"),
                ("trials", "3"),
                ("max-iters", "300"),
            ],
        ),
    ];
    for s in &cases {
        let one = run_with_threads(s, Some(1)).unwrap();
        let again = run_with_threads(s, Some(1)).unwrap();
        let many = run_with_threads(s, Some(3)).unwrap();
        assert_eq!(
            csv_without_timing(&one),
            csv_without_timing(&again),
            "{}",
            s.kind
        );
        assert_eq!(
            csv_without_timing(&one),
            csv_without_timing(&many),
            "{}",
            s.kind
        );
        let trials: Vec<usize> = one.rows.iter().map(|r| r.trial).collect();
        assert!(trials.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(one.rows.len(), 3 * s.methods.len());
        for (t, r) in one.rows.iter().enumerate() {
            assert_eq!(r.seed, s.seed + (t / s.methods.len()) as u64);
        }
    }
}

#[test]
fn fully_sampled_clustered_images_are_recovered() {
    let s = spec(
        ExperimentKind::Clustered,
        &[
            ("size", "12"),
            ("m", "144"),
            ("trials", "2"),
            ("lambda-grid", "1e-7,0.003"),
            ("tau-grid", "0.01"),
            ("tol", "1e-9"),
            ("max-iters", "50000"),
        ],
    );
    let report = run_clustered(&s).unwrap();
    for r in &report.rows {
        assert!(r.rel_error < 1e-3, "{} {}", r.method, r.rel_error);
    }
    assert_eq!(report.grid.len(), 2 * (2 + 2));
}

#[test]
fn ising_prior_beats_basis_pursuit_on_clustered_images() {
    let s = spec(ExperimentKind::Clustered, &[("methods", "ic,bp")]);
    assert_eq!((s.size, s.m, s.trials), (16, 100, 20));
    let report = run_clustered(&s).unwrap();
    let ic: Vec<f64> = report.rows_for(Method::Ic).map(|r| r.rel_error).collect();
    let bp: Vec<f64> = report.rows_for(Method::Bp).map(|r| r.rel_error).collect();
    let wins = ic.iter().zip(&bp).filter(|(a, b)| a < b).count();
    assert!(wins >= 14, "IC better on {wins}/20");
    assert_eq!(
        report
            .grid
            .iter()
            .filter(|g| g.method == Method::Ic)
            .count(),
        20 * 9
    );
}

#[test]
fn emitted_blob_images_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(
        ExperimentKind::Clustered,
        &[
            ("size", "16"),
            ("trials", "2"),
            ("seed", "9"),
            ("methods", "tv"),
            ("emit-images", dir.path().to_str().unwrap()),
        ],
    );
    run_clustered(&s).unwrap();
    for t in 0..2u64 {
        let img = read_pgm(&dir.path().join(format!("clustered_t{t}_truth.pgm"))).unwrap();
        let expected = blob_image(16, &mut seeded(9 + t));
        assert_eq!(img.to_unit(), expected);
        assert!(dir.path().join(format!("clustered_t{t}_tv.pgm")).exists());
    }
}

#[test]
fn patches_cover_the_grid() {
    let groups = patch_groups(5);
    assert_eq!(groups.len(), 9);
    assert_eq!(groups[0], vec![0, 1, 2, 5, 6, 7, 10, 11, 12]);
    let mut covered = [false; 25];
    groups.iter().flatten().for_each(|&i| covered[i] = true);
    assert!(covered.iter().all(|c| *c));
}

#[test]
fn fully_sampled_wavelet_images_are_lossless() {
    let s = spec(
        ExperimentKind::Wavelet,
        &[
            ("size", "16"),
            ("k", "24"),
            ("subsample", "1"),
            ("trials", "2"),
            ("tol", "1e-10"),
            ("max-iters", "100000"),
        ],
    );
    let report = run_wavelet(&s).unwrap();
    assert_eq!(report.rows.len(), 10);
    for r in &report.rows {
        assert!(r.psnr > 80.0, "{} {}", r.method, r.psnr);
    }
}

#[test]
fn tree_projection_beats_basis_pursuit_on_wavelet_images() {
    let s = spec(ExperimentKind::Wavelet, &[("methods", "rc,bp")]);
    assert_eq!((s.size, s.m, s.trials), (32, 128, 20));
    let report = run_wavelet(&s).unwrap();
    let rc: Vec<f64> = report.rows_for(Method::Rc).map(|r| r.psnr).collect();
    let bp: Vec<f64> = report.rows_for(Method::Bp).map(|r| r.psnr).collect();
    let wins = rc.iter().zip(&bp).filter(|(a, b)| a >= b).count();
    assert!(wins >= 16, "RC at least as good on {wins}/20");
}

#[test]
fn latent_dimensions_are_logged() {
    let s = spec(
        ExperimentKind::Wavelet,
        &[("methods", "pc,fam"), ("trials", "1"), ("max-iters", "5")],
    );
    let report = run_wavelet(&s).unwrap();
    assert!(report
        .notes
        .contains(&"pc latent dimension 2046 (n = 1024)".to_string()));
    assert!(report
        .notes
        .contains(&"fam latent dimension 1279 (n = 1024)".to_string()));
    assert!(!report.all_converged());
}

#[test]
fn wavelet_experiment_loads_images() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.pgm");
    let pixels: Vec<f64> = (0..64).map(|i| if i % 8 < 4 { 0.8 } else { 0.2 }).collect();
    write_pgm(
        &path,
        &GrayImage::from_unit(8, 8, &pixels),
        PgmFormat::Ascii,
    )
    .unwrap();
    let s = spec(
        ExperimentKind::Wavelet,
        &[
            ("image", path.to_str().unwrap()),
            ("subsample", "1"),
            ("methods", "rc,bp"),
            ("k", "64"),
            ("trials", "1"),
            ("tol", "1e-10"),
            ("max-iters", "100000"),
            ("emit-images", dir.path().to_str().unwrap()),
        ],
    );
    let report = run_wavelet(&s).unwrap();
    assert!(report.rows.iter().all(|r| r.psnr > 80.0));
    assert!(dir.path().join("wavelet_t0_rc_coeffs.pgm").exists());

    let missing = spec(ExperimentKind::Wavelet, &[("image", "/nonexistent/x.pgm")]);
    assert!(matches!(
        run_wavelet(&missing),
        Err(HarnessError::Io { .. })
    ));
    std::fs::write(&path, b"P2\n8 8\n255\n1 2 3\n").unwrap();
    assert!(matches!(run_wavelet(&s), Err(HarnessError::Pgm { .. })));
    write_pgm(
        &path,
        &GrayImage::from_unit(4, 2, &[0.0; 8]),
        PgmFormat::Binary,
    )
    .unwrap();
    assert!(matches!(run_wavelet(&s), Err(HarnessError::Invalid(_))));
}

#[test]
fn runners_check_the_experiment_kind() {
    let s = spec(ExperimentKind::Spikes, &[]);
    assert!(run_clustered(&s).is_err());
    assert!(run_wavelet(&s).is_err());
    assert!(run_spikes_denoise(&s).is_err());
}

fn sparsity() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sparsity"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn cli_writes_reports_and_honours_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    let out = dir.path().join("run.csv");
    std::fs::write(
        &config,
        "# spike run\nn = 120\nm = 60\nk = 3\ntrials = 4\nmethods = discrete\n",
    )
    .unwrap();
    let status = sparsity()
        .args([
            "spikes",
            "--config",
            config.to_str().unwrap(),
            "--trials",
            "2",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = read(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER.join(","));
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,discrete,"));

    let out2 = dir.path().join("clustered.csv");
    let status = sparsity()
        .args([
            "clustered",
            "--size",
            "8",
            "--m",
            "30",
            "--trials",
            "1",
            "--methods",
            "ic",
            "--out",
            out2.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(read(&dir.path().join("clustered.grid.csv"))
        .starts_with("trial,method,lambda,tau,rel_error,converged\n"));
}

#[test]
fn cli_exit_codes() {
    let bad = sparsity()
        .args(["spikes", "--n", "100", "--k", "10"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let unknown = sparsity()
        .args(["wavelet", "--methods", "discrete"])
        .output()
        .unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let not_a_flag = sparsity().args(["spikes", "--bogus"]).output().unwrap();
    assert_eq!(not_a_flag.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("capped.csv");
    let capped = sparsity()
        .args([
            "spikes",
            "--n",
            "100",
            "--m",
            "40",
            "--k",
            "3",
            "--trials",
            "1",
            "--methods",
            "bp",
            "--max-iters",
            "3",
        ])
        .args(["--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(read(&out).lines().count(), 2);
}

#[test]
fn cli_is_deterministic() {
    let run = || {
        let out = sparsity()
            .args([
                "wavelet",
                "--size",
                "8",
                "--k",
                "6",
                "--trials",
                "2",
                "--seed",
                "5",
                "--max-iters",
                "200",
            ])
            .output()
            .unwrap();
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let mut c: Vec<&str> = l.split(',').collect();
                c.remove(7);
                c.join(",")
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
