//! Sequential multi-objective Bayesian optimization of noisy black-box
//! objectives, with closed-form expected-hypervolume-improvement acquisition
//! on denoised surrogates and random-set summaries (Vorob'ev expectation /
//! symmetric deviation) of the Pareto-front uncertainty.
//!
//! All numeric code is generic over [`scalar::Scalar`]; the `*64` aliases at
//! the crate root pin the `f64` instantiation used by the CLI.

pub mod domain;
pub mod error;
pub mod gp;
pub mod numerics;
pub mod parallel;
pub mod pareto;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Design64 = domain::Design<f64>;
pub type ObjectiveVector64 = domain::ObjectiveVector<f64>;
pub type Dataset64 = domain::Dataset<f64>;
pub type BoxBounds64 = domain::BoxBounds<f64>;
pub type ParetoFront64 = pareto::ParetoFront<f64>;
pub type ReferencePoint64 = pareto::ReferencePoint<f64>;
