//! Observed designs and measurements, plus per-objective standardization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Design, ObjectiveVector};

/// Per-objective affine transform mapping raw measurements to zero mean and
/// unit standard deviation, and back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Standardizer<T> {
    pub means: Vec<T>,
    pub stds: Vec<T>,
    /// Objectives whose column was constant; their std is pinned to 1 so a
    /// degenerate initial batch does not abort the run.
    pub degenerate: Vec<bool>,
}

impl<T: Scalar> Standardizer<T> {
    /// Fit means and population (divide-by-n) standard deviations.
    pub fn fit(measurements: &[ObjectiveVector<T>]) -> Result<Self> {
        let n = measurements.len();
        if n < 2 {
            return Err(Error::Domain(format!(
                "standardization needs n >= 2, got {n}"
            )));
        }
        let m = measurements[0].len();
        let n_t = T::from_f64(n as f64);
        let mut means = vec![T::zero(); m];
        for y in measurements {
            for (acc, &v) in means.iter_mut().zip(y.values()) {
                *acc += v;
            }
        }
        for mu in &mut means {
            *mu /= n_t;
        }
        let mut vars = vec![T::zero(); m];
        for y in measurements {
            for ((acc, &v), &mu) in vars.iter_mut().zip(y.values()).zip(&means) {
                let d = v - mu;
                *acc += d * d;
            }
        }
        let mut stds = Vec::with_capacity(m);
        let mut degenerate = Vec::with_capacity(m);
        for var in vars {
            let sd = (var / n_t).sqrt();
            if sd > T::zero() {
                stds.push(sd);
                degenerate.push(false);
            } else {
                stds.push(T::one());
                degenerate.push(true);
            }
        }
        Ok(Self {
            means,
            stds,
            degenerate,
        })
    }

    pub fn n_objectives(&self) -> usize {
        self.means.len()
    }

    pub fn apply(&self, y: &ObjectiveVector<T>) -> ObjectiveVector<T> {
        ObjectiveVector(
            y.values()
                .iter()
                .zip(&self.means)
                .zip(&self.stds)
                .map(|((&v, &mu), &sd)| (v - mu) / sd)
                .collect(),
        )
    }

    pub fn invert(&self, y_std: &ObjectiveVector<T>) -> ObjectiveVector<T> {
        ObjectiveVector(
            y_std
                .values()
                .iter()
                .zip(&self.means)
                .zip(&self.stds)
                .map(|((&v, &mu), &sd)| mu + v * sd)
                .collect(),
        )
    }

    /// Standardize a single coordinate of objective `i`.
    pub fn apply_scalar(&self, i: usize, v: T) -> T {
        (v - self.means[i]) / self.stds[i]
    }

    /// Destandardize a single coordinate of objective `i`.
    pub fn invert_scalar(&self, i: usize, v: T) -> T {
        self.means[i] + v * self.stds[i]
    }
}

/// Ordered observations `(x_k, y_k)` with an optional fitted standardizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Dataset<T> {
    designs: Vec<Design<T>>,
    measurements: Vec<ObjectiveVector<T>>,
    standardizer: Option<Standardizer<T>>,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(designs: Vec<Design<T>>, measurements: Vec<ObjectiveVector<T>>) -> Result<Self> {
        if designs.len() != measurements.len() {
            return Err(Error::DimensionMismatch {
                expected: designs.len(),
                got: measurements.len(),
            });
        }
        if let Some(first) = measurements.first() {
            if measurements.iter().any(|y| y.len() != first.len()) {
                return Err(Error::Domain("ragged measurement vectors".into()));
            }
        }
        if let Some(first) = designs.first() {
            if designs.iter().any(|x| x.dim() != first.dim()) {
                return Err(Error::Domain("ragged design vectors".into()));
            }
        }
        Ok(Self {
            designs,
            measurements,
            standardizer: None,
        })
    }

    pub fn empty() -> Self {
        Self {
            designs: Vec::new(),
            measurements: Vec::new(),
            standardizer: None,
        }
    }

    pub fn len(&self) -> usize {
        self.designs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.designs.is_empty()
    }

    pub fn designs(&self) -> &[Design<T>] {
        &self.designs
    }

    pub fn measurements(&self) -> &[ObjectiveVector<T>] {
        &self.measurements
    }

    pub fn standardizer(&self) -> Option<&Standardizer<T>> {
        self.standardizer.as_ref()
    }

    pub fn n_objectives(&self) -> usize {
        self.measurements.first().map_or(0, ObjectiveVector::len)
    }

    pub fn design_dim(&self) -> usize {
        self.designs.first().map_or(0, Design::dim)
    }

    /// Column `i` of the measurement matrix.
    pub fn objective_column(&self, i: usize) -> Vec<T> {
        self.measurements.iter().map(|y| y.values()[i]).collect()
    }

    pub fn push(&mut self, x: Design<T>, y: ObjectiveVector<T>) -> Result<()> {
        if !self.designs.is_empty() {
            if x.dim() != self.design_dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.design_dim(),
                    got: x.dim(),
                });
            }
            if y.len() != self.n_objectives() {
                return Err(Error::DimensionMismatch {
                    expected: self.n_objectives(),
                    got: y.len(),
                });
            }
        }
        self.designs.push(x);
        self.measurements.push(y);
        // Any fitted transform is stale now.
        self.standardizer = None;
        Ok(())
    }
}

/// Produce a standardized copy of the dataset: every objective column gets
/// empirical mean 0 and standard deviation 1, and the fitted transform is
/// stored so it can be inverted.
pub fn standardize<T: Scalar>(dataset: &Dataset<T>) -> Result<Dataset<T>> {
    let standardizer = Standardizer::fit(dataset.measurements())?;
    let measurements = dataset
        .measurements()
        .iter()
        .map(|y| standardizer.apply(y))
        .collect();
    Ok(Dataset {
        designs: dataset.designs.clone(),
        measurements,
        standardizer: Some(standardizer),
    })
}

/// Invert [`standardize`]: map the standardized measurements back to the raw
/// scale using the stored transform.
pub fn destandardize<T: Scalar>(dataset: &Dataset<T>) -> Result<Dataset<T>> {
    let standardizer = dataset
        .standardizer()
        .ok_or_else(|| Error::Domain("dataset has no fitted standardizer".into()))?;
    let measurements = dataset
        .measurements()
        .iter()
        .map(|y| standardizer.invert(y))
        .collect();
    Ok(Dataset {
        designs: dataset.designs.clone(),
        measurements,
        standardizer: None,
    })
}
