//! Maximum-likelihood hyperparameter estimation.
//!
//! The likelihood is maximized over the logarithms of the hyperparameters
//! with BFGS and analytic gradients, restarted from several random
//! initializations. The noise variance is parameterized as
//! nu^2 = floor^2 + exp(2t), which enforces the noise floor smoothly instead
//! of clipping.

use rand::Rng;

use crate::domain::Design;
use crate::error::{Error, Result};
use crate::numerics::bfgs::{bfgs_minimize, BfgsConfig};
use crate::numerics::linalg::{cholesky_factor, Matrix};
use crate::numerics::rng::RngStream;
use crate::parallel::run_indexed;
use crate::scalar::Scalar;

use super::kernel::{matern32_log_grads, matern32_unchecked, Hyperparams};
use super::model::GpModel;

/// Log of the marginal likelihood of the model's training targets:
/// -1/2 y^T (K + nu^2 I)^{-1} y - 1/2 log det(K + nu^2 I) - n/2 log(2 pi).
pub fn log_marginal_likelihood<T: Scalar>(model: &GpModel<T>) -> T {
    let n = model.len();
    let half = T::from_f64(0.5);
    let fit: T = model
        .y_train()
        .iter()
        .zip(model.alpha())
        .map(|(&y, &a)| y * a)
        .sum();
    let two_pi = T::from_f64(2.0 * std::f64::consts::PI);
    -half * fit - half * model.cached_factor().log_det()
        - half * T::from_f64(n as f64) * two_pi.ln()
}

#[derive(Debug, Clone)]
pub struct TrainConfig<T> {
    pub restarts: usize,
    /// Lower bound on the trained noise standard deviation (standardized
    /// scale); keeps the likelihood well-posed near interpolation.
    pub noise_floor: T,
    pub bfgs: BfgsConfig<T>,
    pub threads: usize,
}

impl<T: Scalar> Default for TrainConfig<T> {
    fn default() -> Self {
        Self {
            restarts: 10,
            noise_floor: T::from_f64(1e-6),
            bfgs: BfgsConfig {
                max_iters: 150,
                grad_tol: T::from_f64(1e-5),
                ..BfgsConfig::default()
            },
            threads: 1,
        }
    }
}

/// Internal optimization vector: [log s, log l_1 .. log l_d, t] with
/// nu^2 = floor^2 + exp(2 t).
fn unpack<T: Scalar>(z: &[T], floor: T) -> Option<Hyperparams<T>> {
    let d = z.len() - 2;
    let signal = z[0].exp();
    let lengthscales: Vec<T> = z[1..=d].iter().map(|&v| v.exp()).collect();
    let t = z[d + 1];
    let nu2 = floor * floor + (t + t).exp();
    let noise_std = nu2.sqrt();
    if !signal.is_finite() || lengthscales.iter().any(|l| !l.is_finite()) || !noise_std.is_finite()
    {
        return None;
    }
    Hyperparams::new(signal, lengthscales, noise_std).ok()
}

fn pack<T: Scalar>(hp: &Hyperparams<T>, floor: T) -> Vec<T> {
    let half = T::from_f64(0.5);
    let excess = (hp.noise_std * hp.noise_std - floor * floor).max(T::from_f64(1e-30));
    let mut z = Vec::with_capacity(hp.dim() + 2);
    z.push(hp.signal.ln());
    z.extend(hp.lengthscales.iter().map(|&l| l.ln()));
    z.push(half * excess.ln());
    z
}

struct LmlEval<T> {
    value: T,
    grad: Vec<T>,
}

/// Negative LML and its gradient in the packed log coordinates.
fn neg_lml_with_grad<T: Scalar>(
    x: &[Design<T>],
    y: &[T],
    z: &[T],
    floor: T,
    want_grad: bool,
) -> Option<LmlEval<T>> {
    let hp = unpack(z, floor)?;
    let n = x.len();
    let d = hp.dim();
    let nu2 = hp.noise_std * hp.noise_std;
    let c = Matrix::from_fn(n, n, |i, j| {
        let k = matern32_unchecked(x[i].coords(), x[j].coords(), &hp);
        if i == j {
            k + nu2
        } else {
            k
        }
    });
    let chol = cholesky_factor(&c).ok()?;
    let alpha = chol.solve(y);
    let half = T::from_f64(0.5);
    let two_pi_ln = T::from_f64((2.0 * std::f64::consts::PI).ln());
    let fit: T = y.iter().zip(&alpha).map(|(&yi, &ai)| yi * ai).sum();
    let lml = -half * fit - half * chol.log_det() - half * T::from_f64(n as f64) * two_pi_ln;
    if !lml.is_finite() {
        return None;
    }
    if !want_grad {
        return Some(LmlEval {
            value: -lml,
            grad: Vec::new(),
        });
    }

    // dL/d theta = 1/2 [alpha^T (dC/d theta) alpha - tr(C^{-1} dC/d theta)]
    // with dC/d(log s), dC/d(log l_j) elementwise from the kernel and
    // dC/dt = 2 exp(2t) I.
    let c_inv = chol.inverse();
    let mut grad_l = vec![T::zero(); d + 2];
    let mut kgrads = vec![T::zero(); d + 1];
    for i in 0..n {
        for j in 0..n {
            matern32_log_grads(x[i].coords(), x[j].coords(), &hp, &mut kgrads);
            let w = alpha[i] * alpha[j] - c_inv[(i, j)];
            for (g, &kg) in grad_l.iter_mut().zip(kgrads.iter()) {
                *g += w * kg;
            }
        }
    }
    let t = z[d + 1];
    let dnu2_dt = (t + t).exp() * T::from_f64(2.0);
    let mut diag_w = T::zero();
    for i in 0..n {
        diag_w += alpha[i] * alpha[i] - c_inv[(i, i)];
    }
    grad_l[d + 1] = diag_w * dnu2_dt;
    for g in &mut grad_l {
        *g = -half * *g; // negate for minimization, apply the 1/2
    }
    Some(LmlEval {
        value: -lml,
        grad: grad_l,
    })
}

/// Random initialization in log space, matching the documented ranges on
/// standardized data.
fn random_init<T: Scalar, R: Rng + ?Sized>(d: usize, floor: T, rng: &mut R) -> Vec<T> {
    let mut z = Vec::with_capacity(d + 2);
    let draw = |rng: &mut R, lo: f64, hi: f64| {
        let u = T::unit_uniform(rng);
        T::from_f64(lo) + (T::from_f64(hi) - T::from_f64(lo)) * u
    };
    z.push(draw(rng, (0.1f64).ln(), (2.0f64).ln()));
    for _ in 0..d {
        z.push(draw(rng, (0.05f64).ln(), (2.0f64).ln()));
    }
    let log_nu = draw(rng, (1e-3f64).ln(), 0.0);
    let nu = log_nu.exp();
    let excess = (nu * nu - floor * floor).max(T::from_f64(1e-30));
    z.push(T::from_f64(0.5) * excess.ln());
    z
}

/// Train one objective's GP by restarted maximum likelihood.
///
/// `warm_start`, when given, seeds the first restart (the remaining ones are
/// random). Returns the model with the highest log marginal likelihood.
pub fn train<T: Scalar>(
    x: &[Design<T>],
    y: &[T],
    config: &TrainConfig<T>,
    stream: RngStream,
    warm_start: Option<&Hyperparams<T>>,
) -> Result<GpModel<T>> {
    if x.len() < 2 {
        return Err(Error::Training(format!(
            "need at least 2 observations, got {}",
            x.len()
        )));
    }
    if config.restarts == 0 {
        return Err(Error::Training("need at least one restart".into()));
    }
    let d = x[0].dim();
    let floor = config.noise_floor;

    // Draw every initial point up front from the stream; the optimizations
    // themselves are deterministic, so the restarts can then run in any
    // parallel order.
    let mut rng = stream.rng();
    let inits: Vec<Vec<T>> = (0..config.restarts)
        .map(|r| match (r, warm_start) {
            (0, Some(hp)) => pack(hp, floor),
            _ => random_init(d, floor, &mut rng),
        })
        .collect();

    let optimized: Vec<Option<(Vec<T>, T)>> = run_indexed(config.threads, config.restarts, |r| {
        let z0 = &inits[r];
        let mut f = |z: &[T]| {
            neg_lml_with_grad(x, y, z, floor, false)
                .map_or(T::infinity(), |e| e.value)
        };
        let mut g = |z: &[T]| {
            neg_lml_with_grad(x, y, z, floor, true)
                .map_or_else(|| vec![T::zero(); z.len()], |e| e.grad)
        };
        let res = bfgs_minimize(&mut f, Some(&mut g), z0, None, &config.bfgs);
        if res.value.is_finite() {
            Some((res.argmin, res.value))
        } else {
            None
        }
    });

    let mut best: Option<(GpModel<T>, T)> = None;
    for cand in optimized.into_iter().flatten() {
        let Some(hp) = unpack(&cand.0, floor) else {
            continue;
        };
        let Ok(model) = GpModel::fit(x.to_vec(), y.to_vec(), hp) else {
            continue;
        };
        let lml = log_marginal_likelihood(&model);
        if best.as_ref().is_none_or(|(_, b)| lml > *b) {
            best = Some((model, lml));
        }
    }
    best.map(|(m, _)| m)
        .ok_or_else(|| Error::Training("all restarts failed to factorize".into()))
}
