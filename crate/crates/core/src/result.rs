use serde::{Deserialize, Serialize};

use crate::trace::ConvergenceTrace;

/// Outcome of a single seeded optimizer run.
///
/// `wall_time` is measured but not serialized, so exported reports stay a pure
/// function of their inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: String,
    pub objective: String,
    pub seed: u64,
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub trace: ConvergenceTrace,
    pub evaluations: u64,
    /// Number of abandonment re-initializations (ABC only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scouts: Option<u64>,
    #[serde(skip)]
    pub wall_time: f64,
}
