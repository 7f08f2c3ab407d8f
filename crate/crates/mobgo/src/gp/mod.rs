//! Per-objective Gaussian-process regression: Matern 3/2 prior, Gaussian
//! likelihood, posterior prediction, and MLE hyperparameter training.
//!
//! Each objective gets its own independent model, fit on standardized
//! targets under a zero-mean prior.

mod kernel;
mod model;
mod train;

pub use kernel::{matern32, Hyperparams};
pub use model::{GpModel, PointPrediction};
pub use train::{log_marginal_likelihood, train, TrainConfig};
