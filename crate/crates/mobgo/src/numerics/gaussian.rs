//! Standard-normal PDF/CDF built on a hand-rolled `erf`/`erfc`.
//!
//! Two regimes: a Maclaurin series for small arguments and the Laplace
//! continued fraction for the tail. Absolute error is far below the 1e-12
//! target everywhere; the test suite checks this against a quadrature oracle.

use crate::scalar::Scalar;

const SQRT_PI: f64 = 1.772_453_850_905_516;
const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const SERIES_CUTOFF: f64 = 2.0;

/// erf on [0, SERIES_CUTOFF] via the alternating Maclaurin series.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x; // (-1)^n x^(2n+1) / n!
    let mut sum = term;
    for n in 1..200 {
        term *= -x2 / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum * 2.0 / SQRT_PI
}

/// erfc on (SERIES_CUTOFF, inf) via the Laplace continued fraction
/// sqrt(pi) e^{x^2} erfc(x) = 1/(x+ (1/2)/(x+ 1/(x+ (3/2)/(x+ ...)))),
/// evaluated with the modified Lentz algorithm.
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..=300 {
        let a = if k == 1 { 1.0 } else { (k - 1) as f64 / 2.0 };
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    f * (-x * x).exp() / SQRT_PI
}

fn erfc_f64(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc_f64(-x)
    } else if x <= SERIES_CUTOFF {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

/// Standard normal cumulative distribution function.
pub fn norm_cdf<T: Scalar>(z: T) -> T {
    let z = z.to_f64();
    let u = z / std::f64::consts::SQRT_2;
    // Route through the positive-argument erfc so both tails stay accurate.
    let p = if z < 0.0 {
        0.5 * erfc_f64(-u)
    } else {
        1.0 - 0.5 * erfc_f64(u)
    };
    T::from_f64(p)
}

/// Standard normal probability density function.
pub fn norm_pdf<T: Scalar>(z: T) -> T {
    let z = z.to_f64();
    T::from_f64(FRAC_1_SQRT_2PI * (-0.5 * z * z).exp())
}
