//! Self-contained numerical kernel: dense Cholesky, BFGS, finite
//! differences, Gaussian special functions, and seeded RNG substreams.

pub mod bfgs;
pub mod finite_diff;
pub mod gaussian;
pub mod linalg;
pub mod rng;

pub use bfgs::{bfgs_minimize, BfgsConfig, MinimizeResult};
pub use finite_diff::finite_diff_grad;
pub use gaussian::{norm_cdf, norm_pdf};
pub use linalg::{cholesky_factor, CholeskyFactor, Matrix};
pub use rng::{RngStream, StreamPurpose};
