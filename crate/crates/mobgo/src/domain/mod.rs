//! Domain types shared by every stage of the engine: designs, objective
//! vectors, dominance, datasets, and the design-box affine map.
//!
//! Convention: every objective is maximized internally. Anything that needs
//! minimizing is sign-flipped at ingestion.

mod dataset;

pub use dataset::{standardize, Dataset, Standardizer};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point in the design space (unit-box scale by default).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Design<T>(pub Vec<T>);

impl<T: Scalar> Design<T> {
    pub fn new(coordinates: Vec<T>) -> Result<Self> {
        if coordinates.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite design coordinate".into()));
        }
        Ok(Self(coordinates))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }
}

/// A vector of objective values, maximization convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct ObjectiveVector<T>(pub Vec<T>);

impl<T: Scalar> ObjectiveVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 objectives, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite objective value".into()));
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }
}

/// Outcome of comparing two objective vectors under the maximization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `a >= b` componentwise with at least one strict coordinate.
    Strict,
    /// `a >= b` componentwise (equality allowed everywhere).
    Weak,
    /// Incomparable.
    None,
}

/// Compare `a` against `b`: weak iff `a >= b` componentwise, strict iff
/// additionally some coordinate is strictly larger.
pub fn dominates<T: Scalar>(a: &ObjectiveVector<T>, b: &ObjectiveVector<T>) -> Result<Dominance> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut any_strict = false;
    for (&ai, &bi) in a.values().iter().zip(b.values()) {
        if ai < bi {
            return Ok(Dominance::None);
        }
        if ai > bi {
            any_strict = true;
        }
    }
    Ok(if any_strict {
        Dominance::Strict
    } else {
        Dominance::Weak
    })
}

/// Axis-aligned design-space box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct BoxBounds<T> {
    pub lower: Vec<T>,
    pub upper: Vec<T>,
}

impl<T: Scalar> BoxBounds<T> {
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(&l, &u)| !(l < u)) {
            return Err(Error::Domain(
                "box bounds require lower < upper componentwise".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    /// The unit box [0, 1]^d.
    pub fn unit(d: usize) -> Self {
        Self {
            lower: vec![T::zero(); d],
            upper: vec![T::one(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, x: &Design<T>) -> bool {
        x.dim() == self.dim()
            && x.coords()
                .iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((&xi, &l), &u)| xi >= l && xi <= u)
    }

    pub fn clamp(&self, x: &Design<T>) -> Design<T> {
        Design(
            x.coords()
                .iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .map(|((&xi, &l), &u)| xi.max(l).min(u))
                .collect(),
        )
    }
}

/// Map a unit-box design into `bounds`: componentwise `lower + x (upper - lower)`.
pub fn affine_map<T: Scalar>(x_unit: &Design<T>, bounds: &BoxBounds<T>) -> Result<Design<T>> {
    if x_unit.dim() != bounds.dim() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dim(),
            got: x_unit.dim(),
        });
    }
    if x_unit
        .coords()
        .iter()
        .any(|&c| c < T::zero() || c > T::one())
    {
        return Err(Error::Range("affine_map input outside [0,1]^d".into()));
    }
    Ok(Design(
        x_unit
            .coords()
            .iter()
            .zip(&bounds.lower)
            .zip(&bounds.upper)
            .map(|((&x, &l), &u)| l + x * (u - l))
            .collect(),
    ))
}

/// Inverse of [`affine_map`]: recover the unit-box coordinates.
pub fn affine_unmap<T: Scalar>(x_real: &Design<T>, bounds: &BoxBounds<T>) -> Result<Design<T>> {
    if x_real.dim() != bounds.dim() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dim(),
            got: x_real.dim(),
        });
    }
    let eps = T::from_f64(1e-12);
    for ((&x, &l), &u) in x_real.coords().iter().zip(&bounds.lower).zip(&bounds.upper) {
        if x < l - eps * (u - l) || x > u + eps * (u - l) {
            return Err(Error::Range("affine_unmap input outside bounds".into()));
        }
    }
    Ok(Design(
        x_real
            .coords()
            .iter()
            .zip(&bounds.lower)
            .zip(&bounds.upper)
            .map(|((&x, &l), &u)| ((x - l) / (u - l)).max(T::zero()).min(T::one()))
            .collect(),
    ))
}
