use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use su11::fock::{ObservableTag, TruncationPolicy};
use su11::metrology::{Backend, Model, QfiMethod, Wrt, DEFAULT_COVARIANCE_STEP, DEFAULT_FIDELITY_STEP};

use crate::CliError;

pub const OUTPUT_DIR_ENV: &str = "SU11_OUTPUT_DIR";

/// Every flag the subcommands understand. The same shape is read from a
/// `--config` JSON file; flags given on the command line win.
#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// Single nonlinearity value
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    /// Comma-separated list of nonlinearity values
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub g_list: Option<Vec<f64>>,

    #[arg(long, allow_hyphen_values = true)]
    pub theta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_max: Option<f64>,
    #[arg(long)]
    pub theta_samples: Option<usize>,

    #[arg(long, allow_hyphen_values = true)]
    pub phi_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi_max: Option<f64>,
    #[arg(long)]
    pub phi_samples: Option<usize>,

    #[arg(long)]
    pub wrt: Option<Wrt>,
    #[arg(long)]
    pub method: Option<QfiMethod>,
    #[arg(long)]
    pub backend: Option<Backend>,
    #[arg(long)]
    pub model: Option<Model>,
    /// Adds signal, noise and snr columns to a sweep
    #[arg(long)]
    pub observable: Option<ObservableTag>,
    /// Finite-difference step
    #[arg(long)]
    pub step: Option<f64>,

    /// Output file; defaults to $SU11_OUTPUT_DIR/<command>.<format>, else stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<Format>,

    /// Circuit squeezing parameters and phase for check-circuit
    #[arg(long, allow_hyphen_values = true)]
    pub g1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

macro_rules! merge_fields {
    ($cli:ident, $file:ident; $($f:ident),+) => {
        Options { $($f: $cli.$f.or($file.$f)),+ }
    };
}

impl Options {
    pub fn merged(self, file: Options) -> Options {
        let cli = self;
        merge_fields!(cli, file; g, g_list, theta_min, theta_max, theta_samples, phi_min, phi_max,
            phi_samples, wrt, method, backend, model, observable, step, out, format, g1, g2, theta)
    }

    pub fn load(path: &Path) -> Result<Options, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    pub fn g_values(&self) -> Result<Vec<f64>, CliError> {
        let gs = match (&self.g_list, self.g) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give either --g or --g-list, not both".into())),
            (Some(list), None) => list.clone(),
            (None, Some(g)) => vec![g],
            (None, None) => return Err(CliError::Usage("no g values: pass --g or --g-list".into())),
        };
        if gs.is_empty() {
            return Err(CliError::Usage("empty grid: the g list has no values".into()));
        }
        if let Some(bad) = gs.iter().find(|g| !g.is_finite() || **g < 0.0) {
            return Err(CliError::Usage(format!("g must be finite and >= 0, got {bad}")));
        }
        Ok(gs)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn backend(&self) -> Backend {
        self.backend.unwrap_or(Backend::Gaussian)
    }

    /// The covariance formula on the Gaussian backend, fidelities on Fock.
    pub fn method(&self) -> QfiMethod {
        self.method.unwrap_or(match self.backend() {
            Backend::Gaussian => QfiMethod::GaussianFormula,
            Backend::Fock => QfiMethod::FidelityFD,
        })
    }

    pub fn step_for(&self, method: QfiMethod) -> f64 {
        self.step.unwrap_or(match method {
            QfiMethod::GaussianFormula => DEFAULT_COVARIANCE_STEP,
            _ => DEFAULT_FIDELITY_STEP,
        })
    }

    pub fn truncation(&self) -> TruncationPolicy {
        TruncationPolicy::default()
    }

    /// Where the data file goes; `None` means stdout.
    pub fn output_path(&self, command: &str) -> Option<PathBuf> {
        if let Some(out) = &self.out {
            return Some(out.clone());
        }
        let dir = std::env::var_os(OUTPUT_DIR_ENV).filter(|d| !d.is_empty())?;
        Some(PathBuf::from(dir).join(format!("{command}.{}", self.format().extension())))
    }
}

/// `samples` evenly spaced points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

impl Range {
    /// A missing sample count means 1 for a fixed coordinate and 101 otherwise.
    pub fn build(name: &str, min: f64, max: f64, samples: Option<usize>) -> Result<Range, CliError> {
        if !min.is_finite() || !max.is_finite() {
            return Err(CliError::Usage(format!("{name} range must be finite, got [{min}, {max}]")));
        }
        if max < min {
            return Err(CliError::Usage(format!("{name} range is reversed: [{min}, {max}]")));
        }
        let samples = samples.unwrap_or(if min == max { 1 } else { 101 });
        if samples == 0 {
            return Err(CliError::Usage(format!("empty grid: {name} has 0 samples")));
        }
        if samples == 1 && min != max {
            return Err(CliError::Usage(format!("{name} range [{min}, {max}] needs at least 2 samples")));
        }
        Ok(Range { min, max, samples })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.samples == 1 {
            return vec![self.min];
        }
        let n = (self.samples - 1) as f64;
        (0..self.samples)
            .map(|k| {
                if k + 1 == self.samples {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / n
                }
            })
            .collect()
    }
}

pub fn theta_range(o: &Options, default: (f64, f64), samples: Option<usize>) -> Result<Range, CliError> {
    Range::build(
        "theta",
        o.theta_min.unwrap_or(default.0),
        o.theta_max.unwrap_or(default.1),
        o.theta_samples.or(samples),
    )
}

pub fn phi_range(o: &Options) -> Result<Range, CliError> {
    let min = o.phi_min.unwrap_or(PI);
    Range::build("phi", min, o.phi_max.unwrap_or(min), o.phi_samples)
}
