use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sparsity_harness::{run_with_threads, ExperimentKind, ExperimentSpec, HarnessError, Settings};

/// Structured-sparsity recovery experiments.
#[derive(Parser)]
#[command(name = "sparsity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compressive sensing of spike trains with a refractory gap.
    Spikes(Flags),
    /// Spike trains observed through the identity plus noise.
    SpikesDenoise(Flags),
    /// Compressive recovery of images made of constant blobs.
    Clustered(Flags),
    /// Expander sensing of tree-sparse Haar wavelet images.
    Wavelet(Flags),
}

#[derive(Args)]
struct Flags {
    /// Signal length.
    #[arg(long)]
    n: Option<usize>,
    /// Number of measurements.
    #[arg(long)]
    m: Option<usize>,
    /// Sparsity budget (spikes, or tree nodes for wavelet).
    #[arg(long)]
    k: Option<usize>,
    /// Minimum spike separation enforced by the solvers.
    #[arg(long)]
    delta: Option<usize>,
    /// Minimum spike separation of the generated signals.
    #[arg(long = "delta-true")]
    delta_true: Option<usize>,
    /// Image side.
    #[arg(long)]
    size: Option<usize>,
    /// Measurements as a fraction of the dimension.
    #[arg(long)]
    subsample: Option<f64>,
    /// Comma-separated method names.
    #[arg(long)]
    methods: Option<String>,
    /// Number of random trials.
    #[arg(long)]
    trials: Option<usize>,
    /// Base seed; trial t uses seed + t.
    #[arg(long)]
    seed: Option<u64>,
    /// Euclidean norm of the additive measurement noise.
    #[arg(long)]
    noise: Option<f64>,
    /// Comma-separated regularization weights.
    #[arg(long = "lambda-grid")]
    lambda_grid: Option<String>,
    /// Comma-separated cardinality weights (clustered IC).
    #[arg(long = "tau-grid")]
    tau_grid: Option<String>,
    /// Iteration cap of the iterative solvers.
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
    /// Relative stopping tolerance of the iterative solvers.
    #[arg(long)]
    tol: Option<f64>,
    /// Input PGM for the wavelet experiment.
    #[arg(long)]
    image: Option<PathBuf>,
    /// CSV report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for PGM reconstructions.
    #[arg(long = "emit-images")]
    emit_images: Option<PathBuf>,
    /// File of key = value settings; flags given here take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
}

impl Flags {
    fn settings(&self) -> Settings {
        let mut s = Settings::default();
        let mut put = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                s.set(key, v);
            }
        };
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        put("n", self.n.map(|v| v.to_string()));
        put("m", self.m.map(|v| v.to_string()));
        put("k", self.k.map(|v| v.to_string()));
        put("delta", self.delta.map(|v| v.to_string()));
        put("delta-true", self.delta_true.map(|v| v.to_string()));
        put("size", self.size.map(|v| v.to_string()));
        put("subsample", self.subsample.map(|v| v.to_string()));
        put("methods", self.methods.clone());
        put("trials", self.trials.map(|v| v.to_string()));
        put("seed", self.seed.map(|v| v.to_string()));
        put("noise", self.noise.map(|v| v.to_string()));
        put("lambda-grid", self.lambda_grid.clone());
        put("tau-grid", self.tau_grid.clone());
        put("max-iters", self.max_iters.map(|v| v.to_string()));
        put("tol", self.tol.map(|v| v.to_string()));
        put("image", path(&self.image));
        put("out", path(&self.out));
        put("emit-images", path(&self.emit_images));
        s
    }
}

fn run(kind: ExperimentKind, flags: &Flags) -> Result<bool, HarnessError> {
    let file = match &flags.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let spec = ExperimentSpec::from_settings(kind, &file.merged(flags.settings()))?;
    let report = run_with_threads(&spec, flags.threads)?;
    match &spec.out {
        Some(path) => report.save(path)?,
        None => report.write_csv(std::io::stdout().lock())?,
    }
    for note in &report.notes {
        eprintln!("{note}");
    }
    Ok(report.all_converged())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, flags) = match &cli.command {
        Command::Spikes(f) => (ExperimentKind::Spikes, f),
        Command::SpikesDenoise(f) => (ExperimentKind::SpikesDenoise, f),
        Command::Clustered(f) => (ExperimentKind::Clustered, f),
        Command::Wavelet(f) => (ExperimentKind::Wavelet, f),
    };
    match run(kind, flags) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("warning: some solvers stopped at the iteration cap");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
