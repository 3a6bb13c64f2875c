use std::fmt;

use serde::{Deserialize, Serialize};

use super::ExperimentReport;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    First,
    Second,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub algorithm: String,
    /// Median best-so-far per checkpoint.
    pub medians: Vec<f64>,
}

/// Two algorithms side by side: one row each, one column per checkpoint,
/// cells are medians and the lower median wins the column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub objective: String,
    pub dims: usize,
    pub checkpoints: Vec<usize>,
    pub rows: [ComparisonRow; 2],
    pub winners: Vec<Winner>,
}

impl ComparisonTable {
    pub fn winner_label(&self, column: usize) -> &str {
        match self.winners[column] {
            Winner::First => &self.rows[0].algorithm,
            Winner::Second => &self.rows[1].algorithm,
            Winner::Tie => "tie",
        }
    }
}

pub fn compare(a: &ExperimentReport, b: &ExperimentReport) -> Result<ComparisonTable> {
    let (pa, pb) = (&a.plan, &b.plan);
    if pa.objective != pb.objective {
        return Err(Error::Incompatible(format!(
            "objective `{}` vs `{}`",
            pa.objective, pb.objective
        )));
    }
    if pa.dims != pb.dims {
        return Err(Error::Incompatible(format!("dims {} vs {}", pa.dims, pb.dims)));
    }
    if pa.checkpoints != pb.checkpoints {
        return Err(Error::Incompatible(format!(
            "checkpoints {:?} vs {:?}",
            pa.checkpoints, pb.checkpoints
        )));
    }
    let medians = |r: &ExperimentReport| -> Result<Vec<f64>> {
        r.plan
            .checkpoints
            .iter()
            .map(|&c| {
                r.checkpoint(c)
                    .map(|s| s.median)
                    .ok_or_else(|| Error::Invariant(format!("report lacks statistics for checkpoint {c}")))
            })
            .collect()
    };
    let (ma, mb) = (medians(a)?, medians(b)?);
    let winners = ma
        .iter()
        .zip(&mb)
        .map(|(x, y)| match x.total_cmp(y) {
            std::cmp::Ordering::Less => Winner::First,
            std::cmp::Ordering::Greater => Winner::Second,
            std::cmp::Ordering::Equal => Winner::Tie,
        })
        .collect();
    Ok(ComparisonTable {
        objective: pa.objective.clone(),
        dims: pa.dims,
        checkpoints: pa.checkpoints.clone(),
        rows: [
            ComparisonRow {
                algorithm: a.algorithm().to_string(),
                medians: ma,
            },
            ComparisonRow {
                algorithm: b.algorithm().to_string(),
                medians: mb,
            },
        ],
        winners,
    })
}

impl fmt::Display for ComparisonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}-D), median best-so-far", self.objective, self.dims)?;
        write!(f, "{:<10}", "iteration")?;
        for c in &self.checkpoints {
            write!(f, "{c:>14}")?;
        }
        writeln!(f)?;
        for row in &self.rows {
            write!(f, "{:<10}", row.algorithm)?;
            for m in &row.medians {
                write!(f, "{m:>14.6e}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{:<10}", "winner")?;
        for i in 0..self.checkpoints.len() {
            write!(f, "{:>14}", self.winner_label(i))?;
        }
        writeln!(f)
    }
}
