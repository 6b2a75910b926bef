//! Computable fuzzy-metric shadowing for interval maps.
//!
//! The crate evaluates George–Veeramani fuzzy metrics over piecewise-linear
//! interval maps, validates and searches δ-F-pseudo-orbits and chains, hunts
//! F-shadowing witnesses by exhaustive grid search, computes density curves
//! for ergodic shadowing, and scripts the worked examples as reproducible
//! verdicts.
//!
//! | module | contents |
//! |---|---|
//! | [`tnorm`] | product, minimum and Łukasiewicz t-norms with residuation solvers |
//! | [`fuzzy_metric`] | the three metrics, balls, axiom harness, continuity certificates |
//! | [`systems`] | tent family, three-piece map, its perturbation |
//! | [`orbits`] | pseudo-orbit validation, index sets, densities, chains |
//! | [`shadowing`] | witness search, ergodic density search, mixing probes |
//! | [`cli`] | command implementations behind the `fuzzy-shadow` binary |

pub mod cli;
pub mod error;
pub mod fuzzy_metric;
pub mod orbits;
pub mod shadowing;
pub mod space;
pub mod systems;
pub mod tnorm;

pub use error::{Error, Result};
pub use fuzzy_metric::{Ball, FuzzyMetric, MetricKind, Nearness};
pub use orbits::{DensityReport, IndexSet, OrbitSequence, Provenance};
pub use space::{Grid, Space};
pub use systems::{Dynamics, IntervalMap, MapSpec};
pub use tnorm::TNorm;
