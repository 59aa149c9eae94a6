use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::convexity_probe::ProbeConfig;
use crate::diagnostics::{MarginalSpec, DEFAULT_MASS_TOL, DEFAULT_MAX_CYCLE_LEN, DEFAULT_SUBSET_CAP};
use crate::gauges::{CostSpec, Gauge};
use crate::lexot::{Mode, PlanRepr};

/// `solve` config. `--instance` replaces `instance`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveConfig {
    pub instance: Option<PathBuf>,
    pub mode: Option<Mode>,
}

/// What `probe` looks at: one pair, or seeded pairs on a level set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProbeTarget {
    Pair { xbar: Vec<f64>, ybar: Vec<f64> },
    Level { level: f64, trials: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeCommandConfig {
    pub gauge: Gauge,
    #[serde(flatten)]
    pub target: ProbeTarget,
    #[serde(default)]
    pub probe: ProbeConfig,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A plan given inline or as a path to a plan or solution file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlanSource {
    File(PathBuf),
    Inline(PlanRepr),
}

fn default_tol() -> f64 {
    1e-9
}

fn default_cycle_len() -> usize {
    DEFAULT_MAX_CYCLE_LEN
}

fn default_subset_cap() -> usize {
    DEFAULT_SUBSET_CAP
}

fn default_mass_tol() -> f64 {
    DEFAULT_MASS_TOL
}

/// `verify` config. Without `plan`, the instance is solved and its
/// lexicographic plan is checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    #[serde(default)]
    pub instance: Option<PathBuf>,
    #[serde(default)]
    pub plan: Option<PlanSource>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_cycle_len")]
    pub max_cycle_len: usize,
    #[serde(default = "default_subset_cap")]
    pub subset_cap: usize,
    #[serde(default = "default_mass_tol")]
    pub mass_tol: f64,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub mode: Option<Mode>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            instance: None,
            plan: None,
            tol: default_tol(),
            max_cycle_len: default_cycle_len(),
            subset_cap: default_subset_cap(),
            mass_tol: default_mass_tol(),
            seed: None,
            mode: None,
        }
    }
}

/// `experiment` config: a refinement sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mu: MarginalSpec,
    pub nu: MarginalSpec,
    pub sizes: Vec<usize>,
    pub cost: CostSpec,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub mode: Option<Mode>,
}
