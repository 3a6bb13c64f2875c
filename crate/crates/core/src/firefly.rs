//! Firefly Algorithm.
//!
//! Brightness is the negated objective: firefly `a` is brighter than `b` iff
//! `value(a) < value(b)`. Each iteration sweeps `i` over the ranked swarm and,
//! for every `j ≤ i` that is strictly brighter, moves `i` toward `j`:
//!
//! ```text
//! x_i ← x_i + β0·exp(−γ·r^p)·(x_j − x_i) + α·(u − ½)
//! ```
//!
//! with `r` the Euclidean distance, `p ∈ {1, 2}` and `u` uniform per coordinate.
//! The moved firefly is re-evaluated immediately. The brightest firefly then
//! takes a pure random walk and the swarm is re-ranked.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::ObjectiveSpec;
use crate::result::RunResult;
use crate::rng::RngStream;
use crate::space::SearchSpace;
use crate::trace::ConvergenceTrace;

pub const ALGORITHM: &str = "fa";

pub const DEFAULT_ALPHA: f64 = 0.5;
pub const DEFAULT_BETA0: f64 = 1.0;
pub const DEFAULT_GAMMA: f64 = 1.0;

/// Power applied to the distance inside the attractiveness exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum DistanceExponent {
    /// `exp(−γ·r)`
    Linear,
    /// `exp(−γ·r²)`
    #[default]
    Squared,
}

impl TryFrom<u8> for DistanceExponent {
    type Error = Error;

    fn try_from(p: u8) -> Result<Self> {
        match p {
            1 => Ok(Self::Linear),
            2 => Ok(Self::Squared),
            other => Err(Error::Config(format!("exponent power must be 1 or 2 (got {other})"))),
        }
    }
}

impl From<DistanceExponent> for u8 {
    fn from(e: DistanceExponent) -> u8 {
        match e {
            DistanceExponent::Linear => 1,
            DistanceExponent::Squared => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaConfig {
    pub population: usize,
    /// Scale of the centred uniform step, in absolute box units.
    pub alpha: f64,
    /// Attractiveness at zero distance.
    pub beta0: f64,
    /// Light absorption coefficient.
    pub gamma: f64,
    #[serde(default)]
    pub exponent: DistanceExponent,
    pub max_iterations: usize,
}

impl FaConfig {
    pub fn new(population: usize, max_iterations: usize) -> Self {
        Self {
            population,
            alpha: DEFAULT_ALPHA,
            beta0: DEFAULT_BETA0,
            gamma: DEFAULT_GAMMA,
            exponent: DistanceExponent::Squared,
            max_iterations,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population < 1 {
            return Err(Error::Config("population must be at least 1".into()));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::Config(format!("alpha must be a finite value >= 0 (got {})", self.alpha)));
        }
        if !(0.0..=1.0).contains(&self.beta0) {
            return Err(Error::Config(format!("beta0 must lie in [0, 1] (got {})", self.beta0)));
        }
        if self.gamma.is_nan() || self.gamma < 0.0 {
            return Err(Error::Config(format!("gamma must be >= 0 (got {})", self.gamma)));
        }
        Ok(())
    }

    pub fn attractiveness(&self, r: f64) -> Result<f64> {
        attractiveness(r, self.beta0, self.gamma, self.exponent)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Firefly {
    pub position: Vec<f64>,
    pub value: f64,
}

impl Firefly {
    pub fn is_brighter_than(&self, other: &Firefly) -> bool {
        self.value < other.value
    }
}

/// Euclidean distance.
pub fn distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
}

/// `β0·exp(−γ·r^p)`.
pub fn attractiveness(r: f64, beta0: f64, gamma: f64, exponent: DistanceExponent) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::Range(format!("distance must be >= 0 (got {r})")));
    }
    let scaled = match exponent {
        DistanceExponent::Linear => r,
        DistanceExponent::Squared => r * r,
    };
    // γ = 0 with r = ∞ would be NaN; no absorption means full attraction.
    if gamma == 0.0 {
        return Ok(beta0);
    }
    Ok(beta0 * (-gamma * scaled).exp())
}

/// `x_i + beta·(x_j − x_i) + alpha·(u − ½)`, coordinate-wise.
pub fn attraction_step(x_i: &[f64], x_j: &[f64], beta: f64, alpha: f64, u: &[f64]) -> Vec<f64> {
    x_i.iter()
        .zip(x_j)
        .zip(u)
        .map(|((a, b), u)| a + beta * (b - a) + alpha * (u - 0.5))
        .collect()
}

/// `x + alpha·(u − ½)`, coordinate-wise.
pub fn walk_step(x: &[f64], alpha: f64, u: &[f64]) -> Vec<f64> {
    x.iter().zip(u).map(|(a, u)| a + alpha * (u - 0.5)).collect()
}

fn unit_vector(rng: &mut RngStream, dims: usize) -> Vec<f64> {
    (0..dims).map(|_| rng.unit_closed()).collect()
}

/// Moves `i` toward the brighter `j`, clamps and re-evaluates.
pub fn move_toward(
    i: &Firefly,
    j: &Firefly,
    config: &FaConfig,
    rng: &mut RngStream,
    space: &SearchSpace,
    objective: &ObjectiveSpec,
) -> Result<Firefly> {
    let beta = config.attractiveness(distance(&i.position, &j.position)?)?;
    let u = unit_vector(rng, space.dims());
    let mut position = attraction_step(&i.position, &j.position, beta, config.alpha, &u);
    space.clamp_in_place(&mut position);
    let value = objective.evaluate(&position)?;
    Ok(Firefly { position, value })
}

/// Unconditional random step of the current best; the caller keeps the
/// run-wide best separately.
pub fn random_walk(
    best: &Firefly,
    config: &FaConfig,
    rng: &mut RngStream,
    space: &SearchSpace,
    objective: &ObjectiveSpec,
) -> Result<Firefly> {
    let u = unit_vector(rng, space.dims());
    let mut position = walk_step(&best.position, config.alpha, &u);
    space.clamp_in_place(&mut position);
    let value = objective.evaluate(&position)?;
    Ok(Firefly { position, value })
}

/// Stable sort, brightest first.
pub fn rank(swarm: &mut [Firefly]) {
    swarm.sort_by(|a, b| a.value.total_cmp(&b.value));
}

fn brightest(swarm: &[Firefly]) -> usize {
    let mut best = 0;
    for (i, f) in swarm.iter().enumerate().skip(1) {
        if f.is_brighter_than(&swarm[best]) {
            best = i;
        }
    }
    best
}

struct GlobalBest {
    point: Vec<f64>,
    value: f64,
}

impl GlobalBest {
    fn observe(&mut self, f: &Firefly) {
        if f.value < self.value {
            self.value = f.value;
            self.point.clone_from(&f.position);
        }
    }
}

pub fn run_fa(
    config: &FaConfig,
    objective: &ObjectiveSpec,
    space: &SearchSpace,
    seed: u64,
) -> Result<RunResult> {
    run_fa_with(config, objective, space, RngStream::new(seed))
}

pub fn run_fa_with(
    config: &FaConfig,
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
    let n = config.population;

    let mut swarm = Vec::with_capacity(n);
    for _ in 0..n {
        let position = space.random_point(&mut rng);
        let value = objective.evaluate(&position)?;
        swarm.push(Firefly { position, value });
    }
    let mut evaluations = n as u64;
    rank(&mut swarm);

    let mut best = GlobalBest {
        point: swarm[0].position.clone(),
        value: swarm[0].value,
    };
    let mut trace = ConvergenceTrace::new();
    trace.record(0, best.value)?;

    for iteration in 1..=config.max_iterations {
        for i in 0..n {
            for j in 0..=i {
                if swarm[j].is_brighter_than(&swarm[i]) {
                    let moved = move_toward(&swarm[i], &swarm[j], config, &mut rng, space, objective)?;
                    evaluations += 1;
                    best.observe(&moved);
                    swarm[i] = moved;
                }
            }
        }
        let b = brightest(&swarm);
        let walked = random_walk(&swarm[b], config, &mut rng, space, objective)?;
        evaluations += 1;
        best.observe(&walked);
        swarm[b] = walked;
        rank(&mut swarm);
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
        scouts: None,
        wall_time: started.elapsed().as_secs_f64(),
    })
}
