//! Experiment descriptions, their defaults, and `key = value` settings.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{invalid, io_error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    Spikes,
    SpikesDenoise,
    Clustered,
    Wavelet,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Spikes => "spikes",
            ExperimentKind::SpikesDenoise => "spikes-denoise",
            ExperimentKind::Clustered => "clustered",
            ExperimentKind::Wavelet => "wavelet",
        }
    }

    /// Methods that can run on this experiment, in report order.
    pub fn methods(self) -> &'static [Method] {
        use Method::*;
        match self {
            ExperimentKind::Spikes | ExperimentKind::SpikesDenoise => {
                &[Discrete, Bp, ExclusiveReg, ExclusivePursuit]
            }
            ExperimentKind::Clustered => &[Ic, Bp, Tv, Ogl],
            ExperimentKind::Wavelet => &[Rc, Bp, Hgl, Pc, Fam],
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    /// Model CoSaMP with the dispersive projection.
    Discrete,
    /// ℓ1 basis pursuit.
    Bp,
    /// Least squares plus the exclusive norm over sliding windows.
    ExclusiveReg,
    /// Exclusive-norm pursuit.
    ExclusivePursuit,
    /// Ising-cut prior solved by majorization-minimization.
    Ic,
    /// Anisotropic total-variation pursuit.
    Tv,
    /// Latent overlapping group lasso over 3×3 patches.
    Ogl,
    /// IHT with the rooted-connected tree projection.
    Rc,
    /// Hierarchical group lasso pursuit.
    Hgl,
    /// Parent-child latent group pursuit.
    Pc,
    /// Family latent group pursuit.
    Fam,
}

impl Method {
    pub const ALL: [Method; 11] = [
        Method::Discrete,
        Method::Bp,
        Method::ExclusiveReg,
        Method::ExclusivePursuit,
        Method::Ic,
        Method::Tv,
        Method::Ogl,
        Method::Rc,
        Method::Hgl,
        Method::Pc,
        Method::Fam,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Discrete => "discrete",
            Method::Bp => "bp",
            Method::ExclusiveReg => "exclusive-reg",
            Method::ExclusivePursuit => "exclusive-pursuit",
            Method::Ic => "ic",
            Method::Tv => "tv",
            Method::Ogl => "ogl",
            Method::Rc => "rc",
            Method::Hgl => "hgl",
            Method::Pc => "pc",
            Method::Fam => "fam",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = crate::HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| invalid(format!("unknown method {s:?}")))
    }
}

/// Everything needed to reproduce one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Signal length (spike experiments).
    pub n: usize,
    /// Number of measurements.
    pub m: usize,
    /// Sparsity budget: spikes for the spike experiments, tree nodes for the
    /// wavelet experiment.
    pub k: usize,
    /// Separation enforced by the solvers.
    pub delta: usize,
    /// Separation of the generated spike trains.
    pub delta_true: usize,
    /// Image side for the image experiments.
    pub size: usize,
    pub methods: Vec<Method>,
    pub trials: usize,
    pub seed: u64,
    /// Euclidean norm of the additive noise.
    pub noise: f64,
    pub lambda_grid: Vec<f64>,
    pub tau_grid: Vec<f64>,
    pub max_iters: usize,
    /// Relative stopping tolerance of the iterative solvers.
    pub tol: f64,
    /// Input image for the wavelet experiment; synthesized when absent.
    pub image: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub emit_images: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn defaults(kind: ExperimentKind) -> Self {
        let mut spec = ExperimentSpec {
            kind,
            n: 500,
            m: 70,
            k: 25,
            delta: 15,
            delta_true: 20,
            size: 16,
            methods: kind.methods().to_vec(),
            trials: 20,
            seed: 0,
            noise: 0.0,
            lambda_grid: vec![1e-3, 1e-2, 1e-1],
            tau_grid: vec![1e-3, 1e-2, 1e-1],
            max_iters: 20_000,
            tol: 1e-6,
            image: None,
            out: None,
            emit_images: None,
        };
        match kind {
            ExperimentKind::Spikes => {}
            ExperimentKind::SpikesDenoise => {
                spec.m = spec.n;
                spec.noise = 1e-2;
            }
            ExperimentKind::Clustered => {
                spec.m = 100;
                spec.lambda_grid = vec![0.003, 0.01, 0.03];
                spec.tau_grid = vec![0.01, 0.02, 0.05];
            }
            ExperimentKind::Wavelet => {
                spec.size = 32;
                spec.m = 32 * 32 / 8;
                spec.k = 40;
            }
        }
        spec
    }

    /// Ambient dimension of the recovered signal.
    pub fn dim(&self) -> usize {
        match self.kind {
            ExperimentKind::Spikes | ExperimentKind::SpikesDenoise => self.n,
            ExperimentKind::Clustered | ExperimentKind::Wavelet => self.size * self.size,
        }
    }

    /// Builds a spec from defaults overridden by `settings`. Recognized keys
    /// are the long CLI flag names without dashes; `subsample` sets `m` as a
    /// fraction of the dimension.
    pub fn from_settings(kind: ExperimentKind, settings: &Settings) -> Result<Self> {
        let mut spec = ExperimentSpec::defaults(kind);
        let mut subsample = None;
        let mut m_given = false;
        let mut n_given = false;
        for (key, value) in &settings.0 {
            match key.as_str() {
                "n" => {
                    spec.n = parse(key, value)?;
                    n_given = true;
                }
                "m" => {
                    spec.m = parse(key, value)?;
                    m_given = true;
                }
                "k" => spec.k = parse(key, value)?,
                "delta" => spec.delta = parse(key, value)?,
                "delta-true" => spec.delta_true = parse(key, value)?,
                "size" => spec.size = parse(key, value)?,
                "subsample" => subsample = Some(parse::<f64>(key, value)?),
                "methods" => {
                    spec.methods = list(value)
                        .map(str::parse)
                        .collect::<Result<Vec<Method>>>()?;
                }
                "trials" => spec.trials = parse(key, value)?,
                "seed" => spec.seed = parse(key, value)?,
                "noise" => spec.noise = parse(key, value)?,
                "lambda-grid" => spec.lambda_grid = parse_list(key, value)?,
                "tau-grid" => spec.tau_grid = parse_list(key, value)?,
                "max-iters" => spec.max_iters = parse(key, value)?,
                "tol" => spec.tol = parse(key, value)?,
                "image" => spec.image = Some(PathBuf::from(value)),
                "out" => spec.out = Some(PathBuf::from(value)),
                "emit-images" => spec.emit_images = Some(PathBuf::from(value)),
                other => return Err(invalid(format!("unknown setting {other:?}"))),
            }
        }
        if kind == ExperimentKind::SpikesDenoise {
            if m_given && spec.m != spec.n {
                return Err(invalid(
                    "spikes-denoise senses with the identity, so m must equal n",
                ));
            }
            spec.m = spec.n;
        }
        if kind == ExperimentKind::Wavelet && !m_given && subsample.is_none() {
            spec.m = spec.dim() / 8;
        }
        if kind == ExperimentKind::Clustered && n_given {
            return Err(invalid(
                "the clustered experiment takes its dimension from size",
            ));
        }
        if let Some(ratio) = subsample {
            if m_given {
                return Err(invalid("give either m or subsample, not both"));
            }
            if !(ratio > 0.0 && ratio <= 1.0) {
                return Err(invalid(format!(
                    "subsample must lie in (0, 1], got {ratio}"
                )));
            }
            spec.m = ((ratio * spec.dim() as f64).round() as usize).max(1);
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("n", self.n),
            ("m", self.m),
            ("k", self.k),
            ("delta", self.delta),
            ("delta-true", self.delta_true),
            ("size", self.size),
            ("trials", self.trials),
            ("max-iters", self.max_iters),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(invalid(format!("{name} must be positive")));
        }
        if self.methods.is_empty() {
            return Err(invalid("no methods selected"));
        }
        if let Some(m) = self
            .methods
            .iter()
            .find(|m| !self.kind.methods().contains(m))
        {
            return Err(invalid(format!(
                "method {m} does not apply to {}",
                self.kind
            )));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(invalid("tol must lie in (0, 1)"));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(invalid("noise must be a finite non-negative number"));
        }
        for (name, grid) in [
            ("lambda-grid", &self.lambda_grid),
            ("tau-grid", &self.tau_grid),
        ] {
            if grid.is_empty() || grid.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(invalid(format!("{name} needs finite non-negative values")));
            }
        }
        let dim = self.dim();
        if self.m > dim {
            return Err(invalid(format!(
                "m = {} exceeds the dimension {dim}",
                self.m
            )));
        }
        match self.kind {
            ExperimentKind::Spikes | ExperimentKind::SpikesDenoise => {
                if (self.k - 1) * self.delta_true + 1 > self.n {
                    return Err(invalid(format!(
                        "{} spikes with gap {} do not fit in length {}",
                        self.k, self.delta_true, self.n
                    )));
                }
                if self.delta > self.n {
                    return Err(invalid("delta exceeds n"));
                }
            }
            ExperimentKind::Clustered => {
                if self.size < 3 {
                    return Err(invalid("clustered images need size >= 3"));
                }
            }
            ExperimentKind::Wavelet => {
                if self.image.is_none()
                    && !(self.size.is_power_of_two() && (2..=64).contains(&self.size))
                {
                    return Err(invalid("wavelet size must be a power of two in 2..=64"));
                }
                if self.k > dim {
                    return Err(invalid("tree budget k exceeds the number of coefficients"));
                }
            }
        }
        Ok(())
    }
}

/// Ordered `key → value` settings; later insertions override earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings(pub BTreeMap<String, String>);

impl Settings {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("config line {}: expected key = value", no + 1)))?;
            let key = key.trim().trim_start_matches("--").replace('_', "-");
            if key.is_empty() {
                return Err(invalid(format!("config line {}: empty key", no + 1)));
            }
            map.insert(key, value.trim().to_string());
        }
        Ok(Settings(map))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(io_error(path))?;
        Settings::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(key.to_string(), value.into());
    }

    /// `other` wins on shared keys.
    pub fn merged(mut self, other: Settings) -> Self {
        self.0.extend(other.0);
        self
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| invalid(format!("cannot parse {key} = {value:?}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    list(value).map(|v| parse(key, v)).collect()
}
