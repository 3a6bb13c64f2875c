//! Swarm-intelligence optimizers for bounded continuous minimization.
//!
//! Two population methods share one set of domain types:
//!
//! * [`abc`]: the Artificial Bee Colony (employed, onlooker and scout phases
//!   with greedy replacement and abandonment).
//! * [`firefly`]: the Firefly Algorithm (brightness ranking, distance-decayed
//!   attraction and a random walk for the current best).
//!
//! [`benchfns`] provides the Rastrigin test function (and a sphere smoke test)
//! behind a name-based registry, and [`harness`] runs seeded multi-repetition
//! experiments, aggregates checkpoint statistics and exports CSV/JSON.
//!
//! All objectives are minimized. Every run is a pure function of its
//! configuration and seed.
//!
//! ```
//! use swarmopt::{abc::{run_abc, AbcConfig}, benchfns, SearchSpace};
//!
//! let objective = benchfns::lookup("rastrigin", 2).unwrap();
//! let space = SearchSpace::uniform(2, -30.0, 30.0).unwrap();
//! let config = AbcConfig::for_dims(50, 2, 100);
//! let result = run_abc(&config, &objective, &space, 42).unwrap();
//! assert!(result.best_value < 1.0);
//! ```

pub mod abc;
pub mod benchfns;
pub mod cli;
pub mod error;
pub mod firefly;
pub mod harness;
pub mod objective;
pub mod parallel;
pub mod result;
pub mod rng;
pub mod space;
pub mod trace;

pub use error::{Error, Result};
pub use objective::ObjectiveSpec;
pub use result::RunResult;
pub use rng::RngStream;
pub use space::SearchSpace;
pub use trace::ConvergenceTrace;
