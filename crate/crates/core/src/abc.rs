//! Artificial Bee Colony.
//!
//! Each iteration runs three phases over `SN` food sources:
//!
//! 1. **Employed**: every source proposes one neighbour (a single coordinate
//!    moved relative to a random partner source) and keeps it only if its
//!    fitness is strictly higher.
//! 2. **Onlooker**: `SN` sources are drawn by fitness-proportionate roulette
//!    and each draw performs the same neighbour/greedy step.
//! 3. **Scout**: the most stagnant source whose failure counter exceeds
//!    `limit` is abandoned and re-sampled uniformly from the box.
//!
//! Per iteration this costs exactly `2·SN` objective calls plus one per scout.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{Counted, ObjectiveSpec};
use crate::result::RunResult;
use crate::rng::RngStream;
use crate::space::SearchSpace;
use crate::trace::ConvergenceTrace;

pub const ALGORITHM: &str = "abc";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbcConfig {
    /// Number of food sources (`SN`).
    pub colony_size: usize,
    /// Failed improvements tolerated before a source is abandoned.
    pub limit: u64,
    pub max_iterations: usize,
}

impl AbcConfig {
    /// Config with the conventional abandonment limit `SN·dims`.
    pub fn for_dims(colony_size: usize, dims: usize, max_iterations: usize) -> Self {
        Self {
            colony_size,
            limit: default_limit(colony_size, dims),
            max_iterations,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.colony_size < 2 {
            return Err(Error::Config(format!(
                "colony size must be at least 2 (got {})",
                self.colony_size
            )));
        }
        if self.limit < 1 {
            return Err(Error::Config("abandonment limit must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn default_limit(colony_size: usize, dims: usize) -> u64 {
    (colony_size * dims) as u64
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoodSource {
    pub position: Vec<f64>,
    pub value: f64,
    pub fitness: f64,
    pub trials: u64,
}

impl FoodSource {
    pub fn new(position: Vec<f64>, value: f64) -> Result<Self> {
        Ok(Self {
            position,
            value,
            fitness: fitness_transform(value)?,
            trials: 0,
        })
    }

    /// Greedy replacement. Ties keep the incumbent.
    fn offer(&mut self, position: Vec<f64>, value: f64) -> Result<bool> {
        let fitness = fitness_transform(value)?;
        if fitness > self.fitness {
            self.position = position;
            self.value = value;
            self.fitness = fitness;
            self.trials = 0;
            Ok(true)
        } else {
            self.trials += 1;
            Ok(false)
        }
    }
}

/// Maps an objective value to a strictly positive fitness:
/// `1/(1+f)` for `f ≥ 0`, `1+|f|` otherwise.
pub fn fitness_transform(f: f64) -> Result<f64> {
    if !f.is_finite() {
        return Err(Error::Numeric(format!("fitness of non-finite value {f}")));
    }
    Ok(if f >= 0.0 { 1.0 / (1.0 + f) } else { 1.0 + f.abs() })
}

/// `x_i` with coordinate `j` replaced by `x_ij + phi·(x_ij − x_kj)`.
pub fn perturb(x_i: &[f64], x_k: &[f64], j: usize, phi: f64) -> Vec<f64> {
    let mut v = x_i.to_vec();
    v[j] = x_i[j] + phi * (x_i[j] - x_k[j]);
    v
}

/// Neighbour of source `i` against a uniformly chosen partner `k ≠ i`,
/// clamped to `space`.
pub fn neighbor(
    sources: &[FoodSource],
    i: usize,
    rng: &mut RngStream,
    space: &SearchSpace,
) -> Result<Vec<f64>> {
    if sources.len() < 2 {
        return Err(Error::Config(format!(
            "neighbour search needs at least 2 sources (got {})",
            sources.len()
        )));
    }
    if i >= sources.len() {
        return Err(Error::Range(format!("source index {i} out of {}", sources.len())));
    }
    let j = rng.index(space.dims());
    let mut k = rng.index(sources.len() - 1);
    if k >= i {
        k += 1;
    }
    let phi = rng.symmetric();
    let mut v = perturb(&sources[i].position, &sources[k].position, j, phi);
    space.clamp_in_place(&mut v);
    Ok(v)
}

fn search_from(
    sources: &mut [FoodSource],
    i: usize,
    objective: &mut Counted<'_>,
    rng: &mut RngStream,
    space: &SearchSpace,
) -> Result<()> {
    let candidate = neighbor(sources, i, rng, space)?;
    let value = objective.evaluate(&candidate)?;
    sources[i].offer(candidate, value)?;
    Ok(())
}

/// One neighbour/greedy step per source. Returns the number of evaluations.
pub fn employed_phase(
    sources: &mut [FoodSource],
    objective: &ObjectiveSpec,
    rng: &mut RngStream,
    space: &SearchSpace,
) -> Result<u64> {
    let mut counted = Counted::new(objective);
    for i in 0..sources.len() {
        search_from(sources, i, &mut counted, rng, space)?;
    }
    Ok(counted.calls)
}

/// `p_i = fit_i / Σ fit_j`.
pub fn selection_probabilities(sources: &[FoodSource]) -> Result<Vec<f64>> {
    if let Some((i, s)) = sources
        .iter()
        .enumerate()
        .find(|(_, s)| !(s.fitness > 0.0 && s.fitness.is_finite()))
    {
        return Err(Error::Invariant(format!(
            "source {i} has non-positive fitness {}",
            s.fitness
        )));
    }
    let total: f64 = sources.iter().map(|s| s.fitness).sum();
    Ok(sources.iter().map(|s| s.fitness / total).collect())
}

/// Inverts the cumulative sum of `probabilities` at `u ∈ [0, 1)`.
/// The last bucket absorbs any rounding residue.
pub fn roulette(probabilities: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probabilities.len().saturating_sub(1)
}

/// `SN` roulette-selected neighbour/greedy steps. Probabilities are taken
/// once, from the colony as it stands when the phase starts.
pub fn onlooker_phase(
    sources: &mut [FoodSource],
    objective: &ObjectiveSpec,
    rng: &mut RngStream,
    space: &SearchSpace,
) -> Result<u64> {
    let probabilities = selection_probabilities(sources)?;
    let mut counted = Counted::new(objective);
    for _ in 0..sources.len() {
        let i = roulette(&probabilities, rng.unit());
        search_from(sources, i, &mut counted, rng, space)?;
    }
    Ok(counted.calls)
}

/// Re-initializes at most one source: the one with the most trials among
/// those over `limit` (lowest index on ties). Returns the scouted index.
pub fn scout_phase(
    sources: &mut [FoodSource],
    objective: &ObjectiveSpec,
    rng: &mut RngStream,
    space: &SearchSpace,
    limit: u64,
) -> Result<Option<usize>> {
    let mut chosen: Option<usize> = None;
    for (i, s) in sources.iter().enumerate() {
        if s.trials > limit && chosen.is_none_or(|c| s.trials > sources[c].trials) {
            chosen = Some(i);
        }
    }
    if let Some(i) = chosen {
        let position = space.random_point(rng);
        let value = objective.evaluate(&position)?;
        sources[i] = FoodSource::new(position, value)?;
    }
    Ok(chosen)
}

fn best_index(sources: &[FoodSource]) -> usize {
    let mut best = 0;
    for (i, s) in sources.iter().enumerate().skip(1) {
        if s.value < sources[best].value {
            best = i;
        }
    }
    best
}

/// Tracks the best point seen over the whole run, including abandoned sources.
struct GlobalBest {
    point: Vec<f64>,
    value: f64,
}

impl GlobalBest {
    fn observe(&mut self, sources: &[FoodSource]) {
        let b = &sources[best_index(sources)];
        if b.value < self.value {
            self.value = b.value;
            self.point.clone_from(&b.position);
        }
    }
}

pub fn run_abc(
    config: &AbcConfig,
    objective: &ObjectiveSpec,
    space: &SearchSpace,
    seed: u64,
) -> Result<RunResult> {
    run_abc_with(config, objective, space, RngStream::new(seed))
}

pub fn run_abc_with(
    config: &AbcConfig,
    objective: &ObjectiveSpec,
    space: &SearchSpace,
    mut rng: RngStream,
) -> Result<RunResult> {
    config.validate()?;
    if objective.dims() != space.dims() {
        return Err(Error::Dimension {
            expected: space.dims(),
            actual: objective.dims(),
        });
    }
    let started = Instant::now();
    let sn = config.colony_size;

    let mut sources = Vec::with_capacity(sn);
    for _ in 0..sn {
        let position = space.random_point(&mut rng);
        let value = objective.evaluate(&position)?;
        sources.push(FoodSource::new(position, value)?);
    }
    let mut evaluations = sn as u64;
    let mut scouts = 0u64;

    let first = &sources[best_index(&sources)];
    let mut best = GlobalBest {
        point: first.position.clone(),
        value: first.value,
    };
    let mut trace = ConvergenceTrace::new();
    trace.record(0, best.value)?;

    for iteration in 1..=config.max_iterations {
        evaluations += employed_phase(&mut sources, objective, &mut rng, space)?;
        evaluations += onlooker_phase(&mut sources, objective, &mut rng, space)?;
        best.observe(&sources);
        if scout_phase(&mut sources, objective, &mut rng, space, config.limit)?.is_some() {
            evaluations += 1;
            scouts += 1;
            best.observe(&sources);
        }
        trace.record(iteration, best.value)?;
    }

    Ok(RunResult {
        algorithm: ALGORITHM.to_string(),
        objective: objective.name().to_string(),
        seed: rng.seed(),
        best_point: best.point,
        best_value: best.value,
        trace,
        evaluations,
        scouts: Some(scouts),
        wall_time: started.elapsed().as_secs_f64(),
    })
}
