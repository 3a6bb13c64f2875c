//! Benchmark objectives and the name-based registry behind `--function`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::objective::ObjectiveSpec;

/// Largest dimensionality the built-in entries accept.
pub const MAX_BUILTIN_DIMS: usize = 1000;

/// `10·n + Σ [x_i² − 10·cos(2π·x_i)]`; global minimum 0 at the origin.
///
/// For `n = 2` and `n = 3` this is exactly the classic two- and
/// three-dimensional Rastrigin (constants 20 and 30).
pub fn rastrigin(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyVector);
    }
    Ok(rastrigin_unchecked(x))
}

// Accumulating from 10·n keeps every partial sum ≥ 0 under rounding.
fn rastrigin_unchecked(x: &[f64]) -> f64 {
    x.iter()
        .fold(10.0 * x.len() as f64, |acc, &xi| acc + (xi * xi - 10.0 * (TAU * xi).cos()))
}

/// `Σ x_i²`. Unimodal smoke-test objective (not one of the Rastrigin instances).
pub fn sphere(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyVector);
    }
    Ok(sphere_unchecked(x))
}

fn sphere_unchecked(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

type Builder = Arc<dyn Fn(usize) -> ObjectiveSpec + Send + Sync>;

#[derive(Clone)]
pub struct RegistryEntry {
    pub name: String,
    pub dims: RangeInclusive<usize>,
    pub description: String,
    build: Builder,
}

impl fmt::Debug for RegistryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegistryEntry")
            .field("name", &self.name)
            .field("dims", &self.dims)
            .field("description", &self.description)
            .finish_non_exhaustive()
    }
}

impl RegistryEntry {
    /// Minimum reported for `dims`, if the entry knows one analytically.
    pub fn known_minimum(&self, dims: usize) -> Option<f64> {
        (self.build)(dims).known_minimum().map(|m| m.value)
    }
}

/// Objectives selectable by `(name, dims)`, iterated in name order.
#[derive(Debug, Clone, Default)]
pub struct FunctionRegistry {
    entries: BTreeMap<String, RegistryEntry>,
}

impl FunctionRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register(
            "rastrigin",
            1..=MAX_BUILTIN_DIMS,
            "10n + sum(x^2 - 10cos(2 pi x)), multimodal",
            |dims| {
                ObjectiveSpec::new("rastrigin", dims, rastrigin_unchecked)
                    .with_known_minimum(0.0, vec![0.0; dims])
            },
        );
        reg.register(
            "sphere",
            1..=MAX_BUILTIN_DIMS,
            "sum(x^2), unimodal smoke test",
            |dims| {
                ObjectiveSpec::new("sphere", dims, sphere_unchecked)
                    .with_known_minimum(0.0, vec![0.0; dims])
            },
        );
        reg
    }

    /// Adds or replaces an entry.
    pub fn register<F>(
        &mut self,
        name: impl Into<String>,
        dims: RangeInclusive<usize>,
        description: impl Into<String>,
        build: F,
    ) where
        F: Fn(usize) -> ObjectiveSpec + Send + Sync + 'static,
    {
        let name = name.into();
        self.entries.insert(
            name.clone(),
            RegistryEntry {
                name,
                dims,
                description: description.into(),
                build: Arc::new(build),
            },
        );
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.values()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn lookup(&self, name: &str, dims: usize) -> Result<ObjectiveSpec> {
        let entry = self.entries.get(name).ok_or_else(|| Error::UnknownFunction {
            name: name.to_string(),
            registered: self.names(),
        })?;
        if !entry.dims.contains(&dims) {
            return Err(Error::UnsupportedDims {
                name: name.to_string(),
                dims,
                min: *entry.dims.start(),
                max: *entry.dims.end(),
            });
        }
        Ok((entry.build)(dims))
    }
}

/// Looks up a built-in objective.
pub fn lookup(name: &str, dims: usize) -> Result<ObjectiveSpec> {
    FunctionRegistry::with_builtins().lookup(name, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rastrigin_values() {
        assert_eq!(rastrigin(&[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(rastrigin(&[1.0, 1.0]).unwrap(), 2.0);
        assert_eq!(rastrigin(&[0.5, 0.5]).unwrap(), 40.5);
        assert_eq!(rastrigin(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(matches!(rastrigin(&[]), Err(Error::EmptyVector)));
    }

    #[test]
    fn fixed_dimension_instances() {
        // The two- and three-dimensional forms written with literal constants.
        let f1 = |x: &[f64]| 20.0 + x.iter().map(|v| v * v - 10.0 * (TAU * v).cos()).sum::<f64>();
        let f2 = |x: &[f64]| 30.0 + x.iter().map(|v| v * v - 10.0 * (TAU * v).cos()).sum::<f64>();
        let r2 = lookup("rastrigin", 2).unwrap();
        let r3 = lookup("rastrigin", 3).unwrap();
        for p in [[1.3, -2.7], [29.9, -0.01], [0.25, 0.75]] {
            approx::assert_relative_eq!(r2.evaluate(&p).unwrap(), f1(&p), max_relative = 1e-12);
        }
        for p in [[1.3, -2.7, 4.4], [-30.0, 30.0, 0.5]] {
            approx::assert_relative_eq!(r3.evaluate(&p).unwrap(), f2(&p), max_relative = 1e-12);
        }
        assert_eq!(r2.dims(), 2);
        assert_eq!(r3.dims(), 3);
        assert_eq!(r2.known_minimum().unwrap().value, 0.0);
        assert_eq!(r3.known_minimum().unwrap().location, vec![0.0; 3]);
    }

    #[test]
    fn sphere_entry() {
        let s = lookup("sphere", 2).unwrap();
        assert_eq!(s.evaluate(&[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(s.known_minimum().unwrap().value, 0.0);
    }

    #[test]
    fn lookup_errors() {
        match lookup("nosuch", 2) {
            Err(Error::UnknownFunction { registered, .. }) => {
                assert_eq!(registered, vec!["rastrigin", "sphere"]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(lookup("rastrigin", 0), Err(Error::UnsupportedDims { .. })));
        assert!(matches!(
            lookup("sphere", MAX_BUILTIN_DIMS + 1),
            Err(Error::UnsupportedDims { .. })
        ));
    }

    #[test]
    fn custom_registration() {
        let mut reg = FunctionRegistry::with_builtins();
        reg.register("constant", 1..=3, "flat", |d| ObjectiveSpec::new("constant", d, |_| 7.0));
        assert_eq!(reg.names(), vec!["constant", "rastrigin", "sphere"]);
        assert_eq!(reg.lookup("constant", 3).unwrap().evaluate(&[1.0; 3]).unwrap(), 7.0);
        assert!(reg.lookup("constant", 4).is_err());
    }

    #[test]
    fn grid_minimum_is_origin() {
        // 60,001 points on [-30, 30], spacing 1e-3.
        let (mut best_x, mut best_v) = (f64::NAN, f64::INFINITY);
        for k in 0..=60_000i64 {
            let x = (k - 30_000) as f64 / 1000.0;
            let v = rastrigin(&[x]).unwrap();
            if v < best_v {
                best_v = v;
                best_x = x;
            }
        }
        assert_eq!(best_v, 0.0);
        assert_eq!(best_x, 0.0);
    }

    proptest! {
        #[test]
        fn rastrigin_non_negative(x in prop::collection::vec(-30.0f64..30.0, 1..6)) {
            prop_assert!(rastrigin(&x).unwrap() >= 0.0);
        }

        #[test]
        fn rastrigin_even(x in prop::collection::vec(-30.0f64..30.0, 1..6), idx in 0usize..6) {
            let i = idx % x.len();
            let mut y = x.clone();
            y[i] = -y[i];
            prop_assert_eq!(rastrigin(&x).unwrap(), rastrigin(&y).unwrap());
        }
    }
}
