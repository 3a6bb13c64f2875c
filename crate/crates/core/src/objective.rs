use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// Known global minimum of an objective.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownMinimum {
    pub value: f64,
    pub location: Vec<f64>,
}

/// A named scalar function of a real vector, minimized by the optimizers.
#[derive(Clone)]
pub struct ObjectiveSpec {
    name: String,
    dims: usize,
    eval: Arc<EvalFn>,
    known_minimum: Option<KnownMinimum>,
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("dims", &self.dims)
            .field("known_minimum", &self.known_minimum)
            .finish_non_exhaustive()
    }
}

impl ObjectiveSpec {
    pub fn new<F>(name: impl Into<String>, dims: usize, eval: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            dims,
            eval: Arc::new(eval),
            known_minimum: None,
        }
    }

    pub fn with_known_minimum(mut self, value: f64, location: Vec<f64>) -> Self {
        self.known_minimum = Some(KnownMinimum { value, location });
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn known_minimum(&self) -> Option<&KnownMinimum> {
        self.known_minimum.as_ref()
    }

    /// Evaluates at `x`. A NaN or infinite result is an error.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dims {
            return Err(Error::Dimension {
                expected: self.dims,
                actual: x.len(),
            });
        }
        let value = (self.eval)(x);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite {
                objective: self.name.clone(),
                value,
                point: x.to_vec(),
            })
        }
    }
}

/// Wraps an objective and counts calls.
#[derive(Debug)]
pub(crate) struct Counted<'a> {
    objective: &'a ObjectiveSpec,
    pub(crate) calls: u64,
}

impl<'a> Counted<'a> {
    pub(crate) fn new(objective: &'a ObjectiveSpec) -> Self {
        Self { objective, calls: 0 }
    }

    pub(crate) fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        self.calls += 1;
        self.objective.evaluate(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_is_an_error() {
        let f = ObjectiveSpec::new("bad", 1, |x: &[f64]| if x[0] > 0.0 { f64::NAN } else { 1.0 });
        assert_eq!(f.evaluate(&[-1.0]).unwrap(), 1.0);
        match f.evaluate(&[2.0]) {
            Err(Error::NonFinite { objective, point, .. }) => {
                assert_eq!(objective, "bad");
                assert_eq!(point, vec![2.0]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let inf = ObjectiveSpec::new("inf", 1, |_| f64::INFINITY);
        assert!(inf.evaluate(&[0.0]).is_err());
    }

    #[test]
    fn dims_are_checked() {
        let f = ObjectiveSpec::new("c", 2, |_| 0.0);
        assert!(matches!(f.evaluate(&[0.0]), Err(Error::Dimension { .. })));
    }
}
