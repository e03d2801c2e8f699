//! Result documents.

use std::path::Path;

use oscsolve_core::dynamics::{BalanceWeight, Integrator};
use oscsolve_core::solve::{SolveOutcome, SolverConfig, Trial};
use oscsolve_core::{RunConfig, Schedule};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ShellError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum IntegratorName {
    Euler,
    Rk4,
}

impl From<IntegratorName> for Integrator {
    fn from(v: IntegratorName) -> Self {
        match v {
            IntegratorName::Euler => Integrator::Euler,
            IntegratorName::Rk4 => Integrator::Rk4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BalanceName {
    Total,
    Degree,
}

impl From<BalanceName> for BalanceWeight {
    fn from(v: BalanceName) -> Self {
        match v {
            BalanceName::Total => BalanceWeight::Total,
            BalanceName::Degree => BalanceWeight::Degree,
        }
    }
}

/// Everything needed to rerun a solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub k: Option<usize>,
    pub sigma: Option<f64>,
    pub dt: f64,
    pub cycles: f64,
    pub c1_start: f64,
    pub anneal_a: f64,
    pub csync: f64,
    pub c2: f64,
    pub seed: u64,
    pub restarts: usize,
    pub record_every: f64,
    pub integrator: IntegratorName,
    pub balance: BalanceName,
    pub normalize_distances: bool,
    pub weighted: bool,
}

impl Parameters {
    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            schedule: Schedule {
                c1_start: self.c1_start,
                anneal_target: self.anneal_a,
                horizon: self.cycles,
                c_sync: self.csync,
                c2: self.c2,
            },
            run: RunConfig {
                dt: self.dt,
                integrator: self.integrator.into(),
                record_every: self.record_every,
                seed: self.seed,
                ..RunConfig::default()
            },
            restarts: self.restarts,
            sigma: self.sigma,
            normalize_distances: self.normalize_distances,
            balance: self.balance.into(),
            coloring_lower_bound: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub score: f64,
    pub valid: bool,
    pub imbalance: usize,
    pub discreteness: f64,
    pub energy_initial: f64,
    pub energy_final: f64,
}

impl From<&Trial> for TrialRecord {
    fn from(t: &Trial) -> Self {
        TrialRecord {
            seed: t.seed,
            score: t.score,
            valid: t.valid,
            imbalance: t.imbalance,
            discreteness: t.discreteness,
            energy_initial: t.initial_energy,
            energy_final: t.final_energy,
        }
    }
}

/// One solve: instance, parameters, best solution and the per-restart table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub problem: String,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub parameters: Parameters,
    pub best_score: f64,
    pub valid: bool,
    pub best_seed: Option<u64>,
    pub discreteness: Option<f64>,
    pub energy_initial: Option<f64>,
    pub energy_final: Option<f64>,
    pub solution: Vec<usize>,
    pub trials: Vec<TrialRecord>,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
}

impl ResultRecord {
    /// Fills the best-trial fields and the trial table from an outcome.
    pub fn with_outcome(mut self, outcome: &SolveOutcome) -> Self {
        let best = outcome.best();
        self.best_score = best.score;
        self.valid = best.valid;
        self.best_seed = Some(best.seed);
        self.discreteness = Some(best.discreteness);
        self.energy_initial = Some(best.initial_energy);
        self.energy_final = Some(best.final_energy);
        self.solution = best.solution.clone();
        self.trials = outcome.trials.iter().map(TrialRecord::from).collect();
        self
    }
}

/// `SOURCE_DATE_EPOCH` when set, otherwise the current time.
pub fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.trim().parse().ok()) {
        return t;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

pub fn to_json(record: &ResultRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("records always serialize");
    s.push('\n');
    s
}

pub fn write_result(record: &ResultRecord, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(record)).map_err(|e| ShellError::io(path, e))
}

pub fn read_result(path: &Path) -> Result<ResultRecord> {
    let text = std::fs::read_to_string(path).map_err(|e| ShellError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| ShellError::Json { path: path.into(), source })
}
