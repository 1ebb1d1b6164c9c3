//! Run configuration: an optional flat JSON file overlaid by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use coqdyn::{Params, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_T_MAX: f64 = 10.0;
pub const DEFAULT_DT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

/// Contents of a `--config` file. Every field is optional; flags win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub u: Option<Vec<f64>>,
    pub psi0: Option<Vec<f64>>,
    pub bloch0: Option<Vec<f64>>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `flags` replace those in `self`.
    pub fn overlay(self, flags: FileConfig) -> FileConfig {
        FileConfig {
            u: flags.u.or(self.u),
            psi0: flags.psi0.or(self.psi0),
            bloch0: flags.bloch0.or(self.bloch0),
            t_max: flags.t_max.or(self.t_max),
            dt: flags.dt.or(self.dt),
            output_path: flags.output_path.or(self.output_path),
            output_format: flags.output_format.or(self.output_format),
            seed: flags.seed.or(self.seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initial {
    State(StateVector),
    Bloch([f64; 5]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub u: Params,
    pub initial: Initial,
    pub t_max: f64,
    pub dt: f64,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
}

fn fixed<const N: usize>(name: &str, v: &[f64]) -> Result<[f64; N], CliError> {
    let arr: [f64; N] = v
        .try_into()
        .map_err(|_| CliError::Config(format!("{name} needs {N} values, got {}", v.len())))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Config(format!("{name} has non-finite values")));
    }
    Ok(arr)
}

/// A random state with `⟨ψ|ψ⟩ = 1`, components drawn uniformly from `[-1, 1]`.
pub fn random_state(seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c: [f64; 8] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let psi = StateVector::from_components(c);
        // Stay clear of the null cone, where the Bloch vector blows up.
        if psi.norm() > 0.25 {
            return psi * (1.0 / psi.norm().sqrt());
        }
    }
}

impl RunConfig {
    pub fn resolve(cfg: FileConfig) -> Result<Self, CliError> {
        let u = fixed::<6>(
            "u",
            cfg.u
                .as_deref()
                .ok_or_else(|| CliError::Config("--u is required".into()))?,
        )?;
        let initial = match (&cfg.psi0, &cfg.bloch0, cfg.seed) {
            (Some(_), Some(_), _) => {
                return Err(CliError::Config(
                    "psi0 and bloch0 are mutually exclusive".into(),
                ))
            }
            (Some(p), None, _) => {
                Initial::State(StateVector::from_components(fixed::<8>("psi0", p)?))
            }
            (None, Some(b), _) => {
                let b = fixed::<5>("bloch0", b)?;
                let residual = coqdyn::dynamics::bloch::state_space_quadric(&b) - 1.0;
                if residual.abs() > coqdyn::dynamics::evolve::STATE_SPACE_TOLERANCE {
                    return Err(CliError::Config(format!(
                        "bloch0 is off the state space σ1²+σ2²+σ3²-σ4²-σ5² = 1 (residual {residual:e})"
                    )));
                }
                Initial::Bloch(b)
            }
            (None, None, Some(seed)) => Initial::State(random_state(seed)),
            (None, None, None) => {
                return Err(CliError::Config(
                    "one of --psi0, --bloch0 or --seed is required".into(),
                ))
            }
        };
        let t_max = cfg.t_max.unwrap_or(DEFAULT_T_MAX);
        let dt = cfg.dt.unwrap_or(DEFAULT_DT);
        if !(t_max.is_finite() && t_max >= 0.0) {
            return Err(CliError::Config(format!("t_max must be >= 0, got {t_max}")));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(CliError::Config(format!("dt must be > 0, got {dt}")));
        }
        Ok(Self {
            u,
            initial,
            t_max,
            dt,
            output_path: cfg.output_path,
            output_format: cfg.output_format.unwrap_or_default(),
            seed: cfg.seed,
        })
    }
}
