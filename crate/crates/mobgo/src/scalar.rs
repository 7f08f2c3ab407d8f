//! Scalar abstraction over the floating-point type used by the engine.
//!
//! Everything numeric in this crate is generic over [`Scalar`] so the same
//! code runs in `f32` or `f64`. The concrete aliases exported at the crate
//! root pin `f64`, which is what the CLI uses.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};
use rand::Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar usable throughout the engine.
///
/// Special functions (`erf`-based CDFs) and random draws are routed through
/// `f64` internally; the conversion methods here make that explicit rather
/// than relying on `num_traits::cast` at every call site.
pub trait Scalar:
    Float
    + FloatConst
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;

    /// One draw from N(0, 1) via Box-Muller on `f64` uniforms.
    ///
    /// Hand-rolled rather than delegated so that the draw sequence is fully
    /// determined by the underlying RNG stream, independent of distribution
    /// crate internals.
    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        // u1 in (0, 1]: guards ln(0).
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random::<f64>();
        let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        Self::from_f64(z)
    }

    /// One draw from U[0, 1).
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_f64(rng.random::<f64>())
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    #[inline]
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn std_normal_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 200_000;
        let draws: Vec<f64> = (0..n).map(|_| f64::std_normal(&mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|z| (z - mean) * (z - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn f32_conversions_round_trip() {
        let x: f32 = 1.25;
        assert_eq!(f32::from_f64(x.to_f64()), x);
    }
}
