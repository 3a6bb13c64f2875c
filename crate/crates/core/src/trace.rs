use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Best-so-far objective value per iteration.
///
/// Iteration 0 is the initialized population. Values never increase.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, f64)>", into = "Vec<(usize, f64)>")]
pub struct ConvergenceTrace {
    entries: Vec<(usize, f64)>,
}

impl ConvergenceTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `(iteration, min(candidate_best, last best))`.
    pub fn record(&mut self, iteration: usize, candidate_best: f64) -> Result<()> {
        let best = match self.entries.last() {
            Some(&(last, _)) if iteration <= last => {
                return Err(Error::TraceOrder {
                    last,
                    next: iteration,
                })
            }
            Some(&(_, prev)) => prev.min(candidate_best),
            None => candidate_best,
        };
        self.entries.push((iteration, best));
        Ok(())
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last_value(&self) -> Option<f64> {
        self.entries.last().map(|&(_, v)| v)
    }

    /// Best-so-far as of `iteration`: the last entry at or before it.
    pub fn value_at(&self, iteration: usize) -> Option<f64> {
        let idx = self.entries.partition_point(|&(it, _)| it <= iteration);
        idx.checked_sub(1).map(|i| self.entries[i].1)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].1 <= w[0].1)
    }
}

impl TryFrom<Vec<(usize, f64)>> for ConvergenceTrace {
    type Error = Error;

    fn try_from(raw: Vec<(usize, f64)>) -> Result<Self> {
        for w in raw.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::TraceOrder {
                    last: w[0].0,
                    next: w[1].0,
                });
            }
            if w[1].1 > w[0].1 {
                return Err(Error::Invariant(format!(
                    "trace increases at iteration {}",
                    w[1].0
                )));
            }
        }
        Ok(Self { entries: raw })
    }
}

impl From<ConvergenceTrace> for Vec<(usize, f64)> {
    fn from(t: ConvergenceTrace) -> Self {
        t.entries
    }
}
