//! Configuration loading, flag overrides, and scenario construction.
//!
//! A run is described by a JSON config file plus optional command-line
//! overrides (`--seed`, `--out`, `--trials`, `--policy`).  The fully
//! resolved configuration is serialized back into every artifact together
//! with its SHA-256 hash, so any output file names the exact inputs that
//! produced it.

use std::path::{Path, PathBuf};

use bornsim_core::chain::{BranchTree, WitnessModel};
use bornsim_core::experiments::{product_tree, SternGerlachScenario};
use bornsim_core::select::{
    SelectionPolicy, DEFAULT_EIGEN_MAX_ITER, DEFAULT_EIGEN_TOL, DEFAULT_OVERLAP_DIM,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Default trial count when neither the config nor `--trials` sets one.
pub const DEFAULT_TRIALS: u64 = 10_000;
/// Default seed when neither the config nor `--seed` sets one.
pub const DEFAULT_SEED: u64 = 0;
/// Default output directory.
pub const DEFAULT_OUT: &str = "out";
/// Default policy for the single-policy commands.
pub const DEFAULT_POLICY: &str = "surjection-sequential";

/// The four recognized policy names, in canonical order.
pub const POLICY_NAMES: [&str; 4] = [
    "cumulative-random",
    "dominant-vector",
    "surjection-joint",
    "surjection-sequential",
];

/// On-disk config schema.  Unknown fields are rejected so a typo cannot
/// silently fall back to a default.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub scenario: ScenarioConfig,
    #[serde(default)]
    pub witness: WitnessConfig,
    /// Policy for `run` and `born-test`.
    pub policy: Option<String>,
    /// Policy list for `compare-policies` (default: all four).
    pub policies: Option<Vec<String>>,
    /// Overlap-register dimension for the surjection policies.
    pub overlap_dim: Option<u64>,
    /// Residual tolerance for the dominant-vector eigensolver.
    pub eigen_tol: Option<f64>,
    /// Iteration cap for the dominant-vector eigensolver.
    pub eigen_max_iter: Option<usize>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Scenario selector: exactly one of `theta` (spin tilt) or `events`
/// (declarative product tree) must be present.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub theta: Option<f64>,
    pub events: Option<Vec<Vec<f64>>>,
}

/// Witness model: mode count and per-mode overlap.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessConfig {
    #[serde(default = "default_n_modes")]
    pub n_modes: usize,
    #[serde(default)]
    pub epsilon: f64,
}

fn default_n_modes() -> usize {
    1
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            n_modes: 1,
            epsilon: 0.0,
        }
    }
}

/// The scenario after validation, in the canonical tagged form that is
/// hashed and embedded in artifacts.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScenarioSpec {
    /// Spin-1/2 tilted by `theta` against the measurement axis.
    Tilt { theta: f64 },
    /// Independent events with the given outcome-weight rows.
    Product { events: Vec<Vec<f64>> },
}

/// Everything a command needs, fully resolved: file config with flag
/// overrides applied and defaults filled in.  This struct's canonical JSON
/// is what [`crate::output::config_hash`] digests.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub scenario: ScenarioSpec,
    pub witness: WitnessConfig,
    /// Policy used by the single-policy commands.
    pub policy: String,
    /// Policies used by `compare-policies`.
    pub policies: Vec<String>,
    pub overlap_dim: u64,
    pub eigen_tol: f64,
    pub eigen_max_iter: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip)]
    pub out: PathBuf,
}

/// Command-line overrides, applied on top of the file config.
#[derive(Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub trials: Option<u64>,
    pub policy: Option<String>,
}

/// Loads the config file and resolves it against the given overrides.
pub fn load(path: &Path, overrides: &Overrides) -> Result<ResolvedConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading config {}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let file: FileConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        CliError::Config(format!(
            "config {}: {} (at {})",
            path.display(),
            e.inner(),
            e.path()
        ))
    })?;
    resolve(file, overrides)
}

fn resolve(file: FileConfig, overrides: &Overrides) -> Result<ResolvedConfig, CliError> {
    let scenario = match (file.scenario.theta, file.scenario.events) {
        (Some(theta), None) => ScenarioSpec::Tilt { theta },
        (None, Some(events)) => ScenarioSpec::Product { events },
        (Some(_), Some(_)) => {
            return Err(CliError::Config(
                "scenario: give either `theta` or `events`, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Config(
                "scenario: one of `theta` or `events` is required".into(),
            ))
        }
    };

    let policy = overrides
        .policy
        .clone()
        .or(file.policy)
        .unwrap_or_else(|| DEFAULT_POLICY.to_string());
    check_policy_name(&policy)?;

    let policies = file
        .policies
        .unwrap_or_else(|| POLICY_NAMES.iter().map(|s| s.to_string()).collect());
    if policies.is_empty() {
        return Err(CliError::Config("policies: list must not be empty".into()));
    }
    for name in &policies {
        check_policy_name(name)?;
    }

    Ok(ResolvedConfig {
        scenario,
        witness: file.witness,
        policy,
        policies,
        overlap_dim: file.overlap_dim.unwrap_or(DEFAULT_OVERLAP_DIM),
        eigen_tol: file.eigen_tol.unwrap_or(DEFAULT_EIGEN_TOL),
        eigen_max_iter: file.eigen_max_iter.unwrap_or(DEFAULT_EIGEN_MAX_ITER),
        trials: overrides.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS),
        seed: overrides.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        out: overrides
            .out
            .clone()
            .or(file.out)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
    })
}

fn check_policy_name(name: &str) -> Result<(), CliError> {
    if POLICY_NAMES.contains(&name) {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "unknown policy `{name}` (expected one of: {})",
            POLICY_NAMES.join(", ")
        )))
    }
}

impl ResolvedConfig {
    /// The witness model of the config.
    pub fn witness_model(&self) -> Result<WitnessModel, CliError> {
        WitnessModel::new(self.witness.n_modes, self.witness.epsilon).map_err(CliError::Core)
    }

    /// Builds the branch tree the commands operate on.
    pub fn build_tree(&self) -> Result<BranchTree, CliError> {
        let witness = self.witness_model()?;
        match &self.scenario {
            ScenarioSpec::Tilt { theta } => SternGerlachScenario::new(*theta)
                .map(|s| s.with_witness(witness))
                .and_then(|s| s.branch_tree())
                .map_err(CliError::Core),
            ScenarioSpec::Product { events } => {
                product_tree(events, witness).map_err(CliError::Core)
            }
        }
    }

    /// Instantiates a policy by its kebab-case name with this config's
    /// parameters.
    pub fn build_policy(&self, name: &str) -> Result<SelectionPolicy, CliError> {
        match name {
            "cumulative-random" => Ok(SelectionPolicy::CumulativeRandom),
            "dominant-vector" => Ok(SelectionPolicy::DominantVector {
                tol: self.eigen_tol,
                max_iter: self.eigen_max_iter,
            }),
            "surjection-joint" => Ok(SelectionPolicy::SurjectionJoint {
                overlap_dim: self.overlap_dim,
            }),
            "surjection-sequential" => Ok(SelectionPolicy::SurjectionSequential {
                overlap_dim: self.overlap_dim,
            }),
            other => Err(CliError::Config(format!("unknown policy `{other}`"))),
        }
    }
}
