use serde::{Deserialize, Serialize};

/// Descriptive statistics of the best-so-far values at one checkpoint.
///
/// `std` is the population standard deviation (divisor `n`), so a single
/// repetition reports 0. Sums run over the sorted sample, which makes every
/// field exactly invariant under reordering of the repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointStats {
    pub checkpoint: usize,
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub std: f64,
}

impl CheckpointStats {
    pub fn from_values(checkpoint: usize, values: &[f64]) -> Self {
        assert!(!values.is_empty(), "statistics need at least one value");
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        let mean = sorted.iter().sum::<f64>() / n;
        let var = sorted.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        Self {
            checkpoint,
            min: sorted[0],
            median: median_sorted(&sorted),
            mean,
            std: var.sqrt(),
        }
    }
}

/// Median; the mean of the two middle values for even lengths.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    median_sorted(&sorted)
}

fn median_sorted(sorted: &[f64]) -> f64 {
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_samples() {
        let s = CheckpointStats::from_values(20, &[4.0]);
        assert_eq!((s.min, s.median, s.mean, s.std), (4.0, 4.0, 4.0, 0.0));

        let s = CheckpointStats::from_values(40, &[3.0, 1.0, 2.0, 10.0]);
        assert_eq!(s.min, 1.0);
        assert_eq!(s.median, 2.5);
        assert_eq!(s.mean, 4.0);
        approx::assert_abs_diff_eq!(s.std, 3.5355339059327378, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn ordering_sanity(values in prop::collection::vec(0.0f64..1e3, 1..40)) {
            let s = CheckpointStats::from_values(1, &values);
            prop_assert!(s.min <= s.median);
            prop_assert!(s.median <= s.mean + 3.0 * s.std + 1e-9);
        }

        #[test]
        fn permutation_invariant(mut values in prop::collection::vec(-1e3f64..1e3, 1..40), k in 0usize..40) {
            let a = CheckpointStats::from_values(1, &values);
            let k = k % values.len();
            values.rotate_left(k);
            values.reverse();
            let b = CheckpointStats::from_values(1, &values);
            prop_assert_eq!(a.min, b.min);
            prop_assert_eq!(a.median, b.median);
            prop_assert_eq!(a.mean, b.mean);
            prop_assert_eq!(a.std, b.std);
        }
    }
}
