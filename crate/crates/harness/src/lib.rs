//! Experiment runner for the structured-sparsity toolkit: synthetic spike
//! trains, clustered images and tree-sparse wavelet images, each recovered
//! by discrete and convex methods and summarized in a CSV report.

pub mod error;
pub mod experiments;
pub mod pgm;
pub mod report;
pub mod spec;

pub use error::{HarnessError, Result};
pub use experiments::{run_clustered, run_experiment, run_spikes, run_spikes_denoise, run_wavelet};
pub use report::{ExperimentReport, GridRow, ReportRow, CSV_HEADER};
pub use spec::{ExperimentKind, ExperimentSpec, Method, Settings};

/// Runs `spec` on a dedicated pool of `threads` workers (the global pool
/// when `None`).
pub fn run_with_threads(spec: &ExperimentSpec, threads: Option<usize>) -> Result<ExperimentReport> {
    match threads {
        None => run_experiment(spec),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| error::HarnessError::Invalid(format!("thread pool: {e}")))?;
            pool.install(|| run_experiment(spec))
        }
    }
}
