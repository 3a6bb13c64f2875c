//! Seeded multi-repetition experiments.
//!
//! An [`ExperimentPlan`] fixes everything a run depends on: algorithm and its
//! parameters, objective, box, repetition count, base seed and checkpoints.
//! [`run_experiment`] is a pure function of the plan; repetitions are
//! independent and may execute on the rayon pool.

mod compare;
mod export;
mod stats;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::abc::{self, AbcConfig};
use crate::benchfns::FunctionRegistry;
use crate::error::{Error, Result};
use crate::firefly::{self, FaConfig};
use crate::parallel::{self, Execution};
use crate::result::RunResult;
use crate::rng::RngStream;
use crate::space::SearchSpace;

pub use compare::{compare, ComparisonTable, ComparisonRow, Winner};
pub use export::{
    emit_plot_data, export, plot_series, read_json, summary_path, write_json, write_summary_csv,
    write_trace_csv, ExportFormat,
};
pub use stats::{median, CheckpointStats};

pub const DEFAULT_POPULATION: usize = 50;
pub const DEFAULT_ITERATIONS: usize = 100;
pub const DEFAULT_REPETITIONS: usize = 30;
pub const DEFAULT_BOUND: f64 = 30.0;
pub const DEFAULT_CHECKPOINTS: [usize; 5] = [20, 40, 60, 80, 100];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum AlgorithmConfig {
    #[serde(rename = "abc")]
    Abc(AbcConfig),
    #[serde(rename = "fa")]
    Fa(FaConfig),
}

impl AlgorithmConfig {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmConfig::Abc(_) => abc::ALGORITHM,
            AlgorithmConfig::Fa(_) => firefly::ALGORITHM,
        }
    }

    pub fn max_iterations(&self) -> usize {
        match self {
            AlgorithmConfig::Abc(c) => c.max_iterations,
            AlgorithmConfig::Fa(c) => c.max_iterations,
        }
    }

    pub fn population(&self) -> usize {
        match self {
            AlgorithmConfig::Abc(c) => c.colony_size,
            AlgorithmConfig::Fa(c) => c.population,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmConfig::Abc(c) => c.validate(),
            AlgorithmConfig::Fa(c) => c.validate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub algorithm: AlgorithmConfig,
    pub objective: String,
    pub dims: usize,
    pub space: SearchSpace,
    pub repetitions: usize,
    pub base_seed: u64,
    pub checkpoints: Vec<usize>,
}

impl ExperimentPlan {
    /// ABC with 50 sources, 100 iterations, limit `50·dims`, ±30 box,
    /// 30 repetitions and checkpoints every 20 iterations.
    pub fn abc_default(objective: &str, dims: usize, base_seed: u64) -> Result<Self> {
        Self::with_algorithm(
            AlgorithmConfig::Abc(AbcConfig::for_dims(DEFAULT_POPULATION, dims, DEFAULT_ITERATIONS)),
            objective,
            dims,
            base_seed,
        )
    }

    /// FA with 50 fireflies, 100 iterations and default α, β0, γ.
    pub fn fa_default(objective: &str, dims: usize, base_seed: u64) -> Result<Self> {
        Self::with_algorithm(
            AlgorithmConfig::Fa(FaConfig::new(DEFAULT_POPULATION, DEFAULT_ITERATIONS)),
            objective,
            dims,
            base_seed,
        )
    }

    fn with_algorithm(
        algorithm: AlgorithmConfig,
        objective: &str,
        dims: usize,
        base_seed: u64,
    ) -> Result<Self> {
        Ok(Self {
            algorithm,
            objective: objective.to_string(),
            dims,
            space: SearchSpace::uniform(dims, -DEFAULT_BOUND, DEFAULT_BOUND)?,
            repetitions: DEFAULT_REPETITIONS,
            base_seed,
            checkpoints: DEFAULT_CHECKPOINTS.to_vec(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.algorithm.validate()?;
        if self.repetitions < 1 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.space.dims() != self.dims {
            return Err(Error::Dimension {
                expected: self.dims,
                actual: self.space.dims(),
            });
        }
        if self.checkpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(format!(
                "checkpoints must be strictly increasing: {:?}",
                self.checkpoints
            )));
        }
        let max = self.algorithm.max_iterations();
        if let Some(&c) = self.checkpoints.iter().find(|&&c| c > max) {
            return Err(Error::Config(format!(
                "checkpoint {c} exceeds max_iterations {max}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub plan: ExperimentPlan,
    pub runs: Vec<RunResult>,
    pub checkpoints: Vec<CheckpointStats>,
    pub total_evaluations: u64,
    /// Elapsed time of the whole experiment; not serialized.
    #[serde(skip)]
    pub total_wall_time: f64,
}

impl ExperimentReport {
    /// Builds a report from finished runs, computing checkpoint statistics.
    pub fn from_runs(plan: ExperimentPlan, runs: Vec<RunResult>) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::Config("a report needs at least one run".into()));
        }
        let checkpoints = plan
            .checkpoints
            .iter()
            .map(|&c| {
                let values = runs
                    .iter()
                    .map(|r| {
                        r.trace.value_at(c).ok_or_else(|| {
                            Error::Invariant(format!("run {} has no trace entry at {c}", r.seed))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CheckpointStats::from_values(c, &values))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            total_evaluations: runs.iter().map(|r| r.evaluations).sum(),
            total_wall_time: runs.iter().map(|r| r.wall_time).sum(),
            plan,
            runs,
            checkpoints,
        })
    }

    pub fn algorithm(&self) -> &str {
        self.plan.algorithm.name()
    }

    pub fn checkpoint(&self, iteration: usize) -> Option<&CheckpointStats> {
        self.checkpoints.iter().find(|s| s.checkpoint == iteration)
    }

    /// Median best-so-far at `iteration` across runs.
    pub fn median_at(&self, iteration: usize) -> Option<f64> {
        let values: Option<Vec<f64>> = self.runs.iter().map(|r| r.trace.value_at(iteration)).collect();
        values.filter(|v| !v.is_empty()).map(|v| median(&v))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Json {
            path: "<memory>".into(),
            source: e,
        })
    }
}

/// Runs one repetition of `plan` with an explicit RNG stream.
pub fn run_single(
    plan: &ExperimentPlan,
    registry: &FunctionRegistry,
    rng: RngStream,
) -> Result<RunResult> {
    let objective = registry.lookup(&plan.objective, plan.dims)?;
    match &plan.algorithm {
        AlgorithmConfig::Abc(c) => abc::run_abc_with(c, &objective, &plan.space, rng),
        AlgorithmConfig::Fa(c) => firefly::run_fa_with(c, &objective, &plan.space, rng),
    }
}

pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentReport> {
    run_experiment_with(plan, &FunctionRegistry::with_builtins(), Execution::default())
}

pub fn run_experiment_with(
    plan: &ExperimentPlan,
    registry: &FunctionRegistry,
    execution: Execution,
) -> Result<ExperimentReport> {
    plan.validate()?;
    // Resolve once up front so a bad name fails before any work is scheduled.
    registry.lookup(&plan.objective, plan.dims)?;

    let started = Instant::now();
    let runs = parallel::map_indexed(plan.repetitions, execution, |rep| {
        run_single(plan, registry, RngStream::for_run(plan.base_seed, rep as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut report = ExperimentReport::from_runs(plan.clone(), runs)?;
    report.total_wall_time = started.elapsed().as_secs_f64();
    Ok(report)
}
