//! Trained per-objective Gaussian-process surrogate and posterior queries.

use rand::Rng;

use crate::domain::Design;
use crate::error::{Error, Result};
use crate::numerics::linalg::{cholesky_factor, CholeskyFactor, Matrix};
use crate::scalar::Scalar;

use super::kernel::{matern32_unchecked, Hyperparams};

/// Posterior variances smaller than `ZERO_VAR_REL * s^2` are numerical noise
/// from the solves and are clamped to exactly zero, which keeps the
/// zero-noise degenerate paths (identical posterior draws) exact.
const ZERO_VAR_REL: f64 = 1e-12;

/// Point-predictive summary at one design.
#[derive(Debug, Clone, PartialEq)]
pub struct PointPrediction<T> {
    pub mean: T,
    /// Variance of the latent objective (noise excluded), clamped at zero.
    pub var_latent: T,
    /// Variance of a hypothetical measurement: latent plus noise.
    pub var_observation: T,
}

/// One objective's trained surrogate: hyperparameters, training data on the
/// standardized scale, and the cached factorization of K + nu^2 I.
#[derive(Debug, Clone)]
pub struct GpModel<T> {
    hyperparams: Hyperparams<T>,
    x_train: Vec<Design<T>>,
    y_train: Vec<T>,
    chol: CholeskyFactor<T>,
    alpha: Vec<T>,
}

impl<T: Scalar> GpModel<T> {
    /// Condition a GP with the given hyperparameters on `(x, y)`.
    pub fn fit(x: Vec<Design<T>>, y: Vec<T>, hyperparams: Hyperparams<T>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Training("need at least one observation".into()));
        }
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.iter().any(|xi| xi.dim() != hyperparams.dim()) {
            return Err(Error::DimensionMismatch {
                expected: hyperparams.dim(),
                got: x.iter().map(Design::dim).find(|&d| d != hyperparams.dim()).unwrap_or(0),
            });
        }
        let n = x.len();
        let nu2 = hyperparams.noise_std * hyperparams.noise_std;
        let k = Matrix::from_fn(n, n, |i, j| {
            let kij = matern32_unchecked(x[i].coords(), x[j].coords(), &hyperparams);
            if i == j {
                kij + nu2
            } else {
                kij
            }
        });
        let chol = cholesky_factor(&k)?;
        let alpha = chol.solve(&y);
        Ok(Self {
            hyperparams,
            x_train: x,
            y_train: y,
            chol,
            alpha,
        })
    }

    pub fn hyperparams(&self) -> &Hyperparams<T> {
        &self.hyperparams
    }

    pub fn x_train(&self) -> &[Design<T>] {
        &self.x_train
    }

    pub fn y_train(&self) -> &[T] {
        &self.y_train
    }

    pub fn len(&self) -> usize {
        self.x_train.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_train.is_empty()
    }

    pub(crate) fn cached_factor(&self) -> &CholeskyFactor<T> {
        &self.chol
    }

    pub(crate) fn alpha(&self) -> &[T] {
        &self.alpha
    }

    fn check_query_dim(&self, xs: &[Design<T>]) -> Result<()> {
        let d = self.hyperparams.dim();
        if let Some(bad) = xs.iter().find(|x| x.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: bad.dim(),
            });
        }
        Ok(())
    }

    /// Cross-covariance column k(X_train, x).
    fn kernel_column(&self, x: &Design<T>) -> Vec<T> {
        self.x_train
            .iter()
            .map(|xi| matern32_unchecked(xi.coords(), x.coords(), &self.hyperparams))
            .collect()
    }

    /// Posterior mean at the query points.
    pub fn posterior_mean(&self, xs: &[Design<T>]) -> Result<Vec<T>> {
        self.check_query_dim(xs)?;
        Ok(xs
            .iter()
            .map(|x| {
                self.kernel_column(x)
                    .iter()
                    .zip(&self.alpha)
                    .map(|(&k, &a)| k * a)
                    .sum()
            })
            .collect())
    }

    /// Joint posterior mean and covariance at the query points.
    ///
    /// The covariance is symmetric by construction; diagonal entries below
    /// the numerical-zero floor are clamped to exactly zero.
    pub fn posterior(&self, xs: &[Design<T>]) -> Result<(Vec<T>, Matrix<T>)> {
        self.check_query_dim(xs)?;
        let q = xs.len();
        let n = self.len();
        // V = L^{-1} K(X, X*), one column per query point.
        let mut v_cols: Vec<Vec<T>> = Vec::with_capacity(q);
        let mut mean = Vec::with_capacity(q);
        for x in xs {
            let kx = self.kernel_column(x);
            mean.push(kx.iter().zip(&self.alpha).map(|(&k, &a)| k * a).sum());
            v_cols.push(self.chol.solve_lower(&kx));
        }
        let zero_floor =
            T::from_f64(ZERO_VAR_REL) * self.hyperparams.signal * self.hyperparams.signal;
        let mut cov = Matrix::zeros(q, q);
        for i in 0..q {
            for j in 0..=i {
                let prior = matern32_unchecked(xs[i].coords(), xs[j].coords(), &self.hyperparams);
                let mut dot = T::zero();
                for k in 0..n {
                    dot += v_cols[i][k] * v_cols[j][k];
                }
                let c = prior - dot;
                cov[(i, j)] = c;
                cov[(j, i)] = c;
            }
        }
        for i in 0..q {
            if cov[(i, i)] < zero_floor {
                cov[(i, i)] = T::zero();
            }
        }
        Ok((mean, cov))
    }

    /// Point prediction (mean, latent variance, observation variance).
    pub fn predict_point(&self, x: &Design<T>) -> Result<PointPrediction<T>> {
        let (mean, cov) = self.posterior(std::slice::from_ref(x))?;
        let nu2 = self.hyperparams.noise_std * self.hyperparams.noise_std;
        let var_latent = cov[(0, 0)].max(T::zero());
        Ok(PointPrediction {
            mean: mean[0],
            var_latent,
            var_observation: var_latent + nu2,
        })
    }

    /// Posterior mean at the training inputs: the denoised targets.
    pub fn denoised_targets(&self) -> Vec<T> {
        // Infallible: training inputs match the model dimension by
        // construction.
        self.posterior_mean(&self.x_train).expect("training inputs are dimension-consistent")
    }

    /// One joint draw from the posterior at the query points.
    pub fn sample_posterior<R: Rng + ?Sized>(
        &self,
        xs: &[Design<T>],
        rng: &mut R,
    ) -> Result<Vec<T>> {
        let (mean, cov) = self.posterior(xs)?;
        self.sample_with_moments(&mean, &cov, rng)
    }

    /// Draw from N(mean, cov) reusing precomputed posterior moments. The
    /// standard-normal draws are consumed from `rng` even on the degenerate
    /// (zero-covariance) path so the stream position stays predictable.
    pub fn sample_with_moments<R: Rng + ?Sized>(
        &self,
        mean: &[T],
        cov: &Matrix<T>,
        rng: &mut R,
    ) -> Result<Vec<T>> {
        let q = mean.len();
        let z: Vec<T> = (0..q).map(|_| T::std_normal(rng)).collect();
        let zero_floor =
            T::from_f64(ZERO_VAR_REL) * self.hyperparams.signal * self.hyperparams.signal;
        let max_var = (0..q).fold(T::zero(), |m, i| m.max(cov[(i, i)]));
        if max_var <= zero_floor {
            return Ok(mean.to_vec());
        }
        let factor = cholesky_factor(cov)?;
        let l = &factor.lower;
        Ok((0..q)
            .map(|i| {
                let mut s = mean[i];
                for j in 0..=i {
                    s += l[(i, j)] * z[j];
                }
                s
            })
            .collect())
    }
}
