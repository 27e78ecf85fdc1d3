//! Run configuration: command-line flags merged with an optional TOML config
//! file. Flags win over file values.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;
use transport_hessian::EntropyModel64;

use crate::error::{CliError, Result};

pub const DEFAULT_QUANTILES: usize = 2048;
pub const DEFAULT_GRID: usize = 1024;
pub const DEFAULT_STEPS: usize = 11;
pub const DEFAULT_ENTROPY: &str = "boltzmann";

/// Shared flags; every subcommand takes the same set.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input density files (CSV)
    pub inputs: Vec<PathBuf>,

    /// Entropy kind: boltzmann | quadratic | cross | reciprocal | gamma[:G]
    #[arg(long)]
    pub entropy: Option<String>,

    /// Exponent for the gamma entropy (wins over a gamma:<G> suffix)
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Grid intervals for densities rebuilt from samples
    #[arg(long, value_name = "N")]
    pub grid: Option<usize>,

    /// Size of the quantile y-grid
    #[arg(long, value_name = "M")]
    pub quantiles: Option<usize>,

    /// Number of geodesic time steps
    #[arg(long, value_name = "K")]
    pub steps: Option<usize>,

    /// Output CSV path (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Input format applied to every input file
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,

    /// Optional TOML config file; explicit flags win over its values
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    /// CSV with header `x,p`: uniform grid nodes and density values
    Grid,
    /// CSV with header `sample`: one draw per row
    Samples,
}

/// Values read from the optional config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    entropy: Option<String>,
    gamma: Option<f64>,
    grid: Option<usize>,
    quantiles: Option<usize>,
    steps: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
    inputs: Option<Vec<PathBuf>>,
}

/// Fully resolved configuration for one run.
#[derive(Debug)]
pub struct RunConfig {
    pub entropy: EntropyModel64,
    pub inputs: Vec<PathBuf>,
    pub format: InputFormat,
    pub quantiles: usize,
    pub grid: usize,
    pub steps: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => load_file_config(path)?,
            None => FileConfig::default(),
        };

        let format = match args.format {
            Some(f) => f,
            None => match file.format.as_deref() {
                None => InputFormat::Grid,
                Some("grid") => InputFormat::Grid,
                Some("samples") => InputFormat::Samples,
                Some(other) => {
                    return Err(CliError::Config {
                        path: args.config.clone().unwrap_or_default(),
                        message: format!("unknown format {other:?} (expected grid or samples)"),
                    })
                }
            },
        };

        let spec = args
            .entropy
            .or(file.entropy)
            .unwrap_or_else(|| DEFAULT_ENTROPY.to_string());
        let gamma = args.gamma.or(file.gamma);
        let entropy = parse_entropy(&spec, gamma)?;

        let inputs = if args.inputs.is_empty() {
            file.inputs.unwrap_or_default()
        } else {
            args.inputs
        };

        let quantiles = args
            .quantiles
            .or(file.quantiles)
            .unwrap_or(DEFAULT_QUANTILES);
        if quantiles < 16 {
            return Err(CliError::Usage(format!(
                "--quantiles must be at least 16, got {quantiles}"
            )));
        }
        let grid = args.grid.or(file.grid).unwrap_or(DEFAULT_GRID);
        if grid < 16 {
            return Err(CliError::Usage(format!(
                "--grid must be at least 16, got {grid}"
            )));
        }
        let steps = args.steps.or(file.steps).unwrap_or(DEFAULT_STEPS);
        if steps < 2 {
            return Err(CliError::Usage(format!(
                "--steps must be at least 2, got {steps}"
            )));
        }

        Ok(RunConfig {
            entropy,
            inputs,
            format,
            quantiles,
            grid,
            steps,
            out: args.out.or(file.out),
        })
    }

    pub fn expect_inputs(&self, min: usize, max: Option<usize>) -> Result<()> {
        let n = self.inputs.len();
        if n < min {
            return Err(CliError::Usage(format!(
                "expected at least {min} input file(s), got {n}"
            )));
        }
        if let Some(max) = max {
            if n > max {
                return Err(CliError::Usage(format!(
                    "expected at most {max} input file(s), got {n}"
                )));
            }
        }
        Ok(())
    }
}

fn load_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            CliError::FileNotFound(path.to_path_buf())
        } else {
            CliError::Io(format!("{}: {e}", path.display()))
        }
    })?;
    toml::from_str(&text).map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Parses an entropy spec string; a `--gamma` flag wins over a `gamma:<G>`
/// suffix.
pub fn parse_entropy(spec: &str, gamma_flag: Option<f64>) -> Result<EntropyModel64> {
    let (kind, suffix) = match spec.split_once(':') {
        Some((k, s)) => (k, Some(s)),
        None => (spec, None),
    };
    if suffix.is_some() && kind != "gamma" {
        return Err(CliError::Usage(format!(
            "only the gamma kind takes a parameter, got {spec:?}"
        )));
    }
    match kind {
        "boltzmann" => Ok(EntropyModel64::boltzmann()),
        "quadratic" => Ok(EntropyModel64::quadratic()),
        "cross" => Ok(EntropyModel64::cross()),
        "reciprocal" => Ok(EntropyModel64::reciprocal()),
        "gamma" => {
            let g = match (gamma_flag, suffix) {
                (Some(g), _) => g,
                (None, Some(s)) => s.parse::<f64>().map_err(|_| {
                    CliError::Usage(format!("cannot parse gamma value {s:?}"))
                })?,
                (None, None) => {
                    return Err(CliError::Usage(
                        "gamma entropy needs --gamma <G> or gamma:<G>".to_string(),
                    ))
                }
            };
            Ok(EntropyModel64::gamma(g)?)
        }
        other => Err(CliError::Usage(format!(
            "unknown entropy kind {other:?} (expected boltzmann, quadratic, cross, reciprocal, or gamma)"
        ))),
    }
}
