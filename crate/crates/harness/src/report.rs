//! Per-trial result rows and their CSV serialization.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{io_error, Result};
use crate::spec::{ExperimentKind, Method};

pub const CSV_HEADER: [&str; 9] = [
    "trial",
    "method",
    "rel_error",
    "psnr",
    "support_precision",
    "support_recall",
    "iterations",
    "wall_time_s",
    "seed",
];

pub const GRID_HEADER: [&str; 6] = ["trial", "method", "lambda", "tau", "rel_error", "converged"];

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub trial: usize,
    pub method: Method,
    pub rel_error: f64,
    pub psnr: f64,
    pub support_precision: f64,
    pub support_recall: f64,
    pub iterations: usize,
    pub wall_time_s: f64,
    pub seed: u64,
    pub converged: bool,
}

/// One point of a parameter sweep; the row reported for the method is the
/// sweep point with the smallest error.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub trial: usize,
    pub method: Method,
    pub lambda: f64,
    pub tau: f64,
    pub rel_error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    /// Sorted by `(trial, method)`.
    pub rows: Vec<ReportRow>,
    /// Sorted by `(trial, method)`, sweep order within.
    pub grid: Vec<GridRow>,
    /// Free-form facts about the run, e.g. latent dimensions.
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    pub fn rows_for(&self, method: Method) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }

    /// Median relative error of `method` over all trials.
    pub fn median_rel_error(&self, method: Method) -> Option<f64> {
        let mut v: Vec<f64> = self.rows_for(method).map(|r| r.rel_error).collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let mid = v.len() / 2;
        Some(if v.len() % 2 == 1 {
            v[mid]
        } else {
            0.5 * (v[mid - 1] + v[mid])
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.trial.to_string(),
                r.method.to_string(),
                r.rel_error.to_string(),
                r.psnr.to_string(),
                r.support_precision.to_string(),
                r.support_recall.to_string(),
                r.iterations.to_string(),
                format!("{:.6}", r.wall_time_s),
                r.seed.to_string(),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_grid_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(GRID_HEADER)?;
        for g in &self.grid {
            w.write_record([
                g.trial.to_string(),
                g.method.to_string(),
                g.lambda.to_string(),
                g.tau.to_string(),
                g.rel_error.to_string(),
                g.converged.to_string(),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Writes the report to `path` and, when any method swept parameters,
    /// the sweep to the sidecar `grid_path(path)`.
    pub fn save(&self, path: &Path) -> Result<()> {
        self.write_csv(File::create(path).map_err(io_error(path))?)?;
        if !self.grid.is_empty() {
            let sidecar = grid_path(path);
            self.write_grid_csv(File::create(&sidecar).map_err(io_error(&sidecar))?)?;
        }
        Ok(())
    }
}

/// `results.csv` → `results.grid.csv`
pub fn grid_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.grid.csv"))
}
