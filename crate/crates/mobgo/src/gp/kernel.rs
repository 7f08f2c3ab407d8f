//! Matern 3/2 covariance with anisotropic lengthscales.

use serde::{Deserialize, Serialize};

use crate::domain::Design;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Kernel and likelihood hyperparameters of one objective's surrogate:
/// signal strength `s`, per-dimension lengthscales, and the measurement
/// noise standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Hyperparams<T> {
    pub signal: T,
    pub lengthscales: Vec<T>,
    pub noise_std: T,
}

impl<T: Scalar> Hyperparams<T> {
    pub fn new(signal: T, lengthscales: Vec<T>, noise_std: T) -> Result<Self> {
        if !(signal > T::zero()) || !signal.is_finite() {
            return Err(Error::Domain("signal must be positive".into()));
        }
        if lengthscales.iter().any(|&l| !(l > T::zero()) || !l.is_finite()) {
            return Err(Error::Domain("lengthscales must be positive".into()));
        }
        if !(noise_std >= T::zero()) || !noise_std.is_finite() {
            return Err(Error::Domain("noise std must be non-negative".into()));
        }
        Ok(Self {
            signal,
            lengthscales,
            noise_std,
        })
    }

    pub fn dim(&self) -> usize {
        self.lengthscales.len()
    }
}

/// Scaled distance q = sqrt(sum_j (x_j - x'_j)^2 / l_j^2).
#[inline]
fn scaled_distance<T: Scalar>(x: &[T], y: &[T], lengthscales: &[T]) -> T {
    let mut r2 = T::zero();
    for ((&a, &b), &l) in x.iter().zip(y).zip(lengthscales) {
        let d = (a - b) / l;
        r2 += d * d;
    }
    r2.sqrt()
}

/// Matern 3/2: k = s^2 (1 + sqrt(3) q) exp(-sqrt(3) q).
pub fn matern32<T: Scalar>(x: &Design<T>, y: &Design<T>, hp: &Hyperparams<T>) -> Result<T> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    if x.dim() != hp.dim() {
        return Err(Error::DimensionMismatch {
            expected: hp.dim(),
            got: x.dim(),
        });
    }
    Ok(matern32_unchecked(x.coords(), y.coords(), hp))
}

#[inline]
pub(crate) fn matern32_unchecked<T: Scalar>(x: &[T], y: &[T], hp: &Hyperparams<T>) -> T {
    let sqrt3 = T::from_f64(3.0).sqrt();
    let q = scaled_distance(x, y, &hp.lengthscales);
    let a = sqrt3 * q;
    hp.signal * hp.signal * (T::one() + a) * (-a).exp()
}

/// Partial derivatives of the kernel with respect to the log hyperparameters
/// (log s and log l_j), as needed by the marginal-likelihood gradient:
///   dk/d(log s)  = 2 k
///   dk/d(log l_j) = 3 s^2 exp(-sqrt(3) q) (x_j - x'_j)^2 / l_j^2
pub(crate) fn matern32_log_grads<T: Scalar>(
    x: &[T],
    y: &[T],
    hp: &Hyperparams<T>,
    out: &mut [T],
) {
    let sqrt3 = T::from_f64(3.0).sqrt();
    let q = scaled_distance(x, y, &hp.lengthscales);
    let e = (-sqrt3 * q).exp();
    let s2 = hp.signal * hp.signal;
    let k = s2 * (T::one() + sqrt3 * q) * e;
    out[0] = k + k; // d/d log s
    let three = T::from_f64(3.0);
    for (j, &l) in hp.lengthscales.iter().enumerate() {
        let d = (x[j] - y[j]) / l;
        out[1 + j] = three * s2 * e * d * d;
    }
}
