//! Dense BFGS minimizer with optional box projection.
//!
//! Used in two places: maximum-likelihood training of the GP hyperparameters
//! (unconstrained, in log space, with analytic gradients) and acquisition
//! maximization over the design box (projected steps, finite-difference
//! gradients). Line search is backtracking Armijo; curvature-violating pairs
//! skip the inverse-Hessian update instead of corrupting it.

use crate::numerics::finite_diff::finite_diff_grad;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct BfgsConfig<T> {
    pub max_iters: usize,
    /// Stop when the (projected) gradient inf-norm falls below this.
    pub grad_tol: T,
    /// Stop when the accepted step inf-norm falls below this.
    pub step_tol: T,
    /// Step for finite-difference gradients when no gradient fn is supplied.
    pub fd_step: T,
}

impl<T: Scalar> Default for BfgsConfig<T> {
    fn default() -> Self {
        Self {
            max_iters: 300,
            grad_tol: T::from_f64(1e-6),
            step_tol: T::from_f64(1e-12),
            fd_step: T::from_f64(1e-6),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimizeResult<T> {
    pub argmin: Vec<T>,
    pub value: T,
    pub converged: bool,
    pub iterations: usize,
}

fn clamp_to_box<T: Scalar>(x: &mut [T], bounds: Option<(&[T], &[T])>) {
    if let Some((lo, hi)) = bounds {
        for ((xi, &l), &h) in x.iter_mut().zip(lo).zip(hi) {
            *xi = (*xi).max(l).min(h);
        }
    }
}

fn inf_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

/// Minimize `f` starting from `x0`.
///
/// `grad` may be `None`, in which case central finite differences with
/// `cfg.fd_step` are used. `bounds` are enforced by projecting every trial
/// point onto the box. Non-finite objective values during the line search
/// shrink the step; if no finite decrease is found the best point seen so
/// far is returned.
pub fn bfgs_minimize<T: Scalar>(
    f: &mut dyn FnMut(&[T]) -> T,
    mut grad: Option<&mut dyn FnMut(&[T]) -> Vec<T>>,
    x0: &[T],
    bounds: Option<(&[T], &[T])>,
    cfg: &BfgsConfig<T>,
) -> MinimizeResult<T> {
    let n = x0.len();
    let mut x = x0.to_vec();
    clamp_to_box(&mut x, bounds);

    let mut fx = f(&x);
    if !fx.is_finite() {
        return MinimizeResult {
            argmin: x,
            value: fx,
            converged: false,
            iterations: 0,
        };
    }

    let fd_step = cfg.fd_step;
    let mut eval_grad = |f: &mut dyn FnMut(&[T]) -> T, x: &[T]| -> Vec<T> {
        match grad.as_mut() {
            Some(g) => g(x),
            None => finite_diff_grad(f, x, fd_step),
        }
    };

    let mut g = eval_grad(f, &x);
    // Inverse Hessian approximation, dense row-major.
    let mut h_inv: Vec<T> = (0..n * n)
        .map(|k| if k % (n + 1) == 0 { T::one() } else { T::zero() })
        .collect();

    let c1 = T::from_f64(1e-4);
    let mut best_x = x.clone();
    let mut best_f = fx;
    let mut iterations = 0;

    for iter in 0..cfg.max_iters {
        iterations = iter;
        if inf_norm(&g) <= cfg.grad_tol {
            return MinimizeResult {
                argmin: x,
                value: fx,
                converged: true,
                iterations: iter,
            };
        }

        // p = -H g
        let mut p: Vec<T> = (0..n)
            .map(|i| {
                -(0..n)
                    .map(|j| h_inv[i * n + j] * g[j])
                    .sum::<T>()
            })
            .collect();
        let descent: T = p.iter().zip(&g).map(|(&pi, &gi)| pi * gi).sum();
        if !descent.is_finite() || descent >= T::zero() {
            // Stale curvature: fall back to steepest descent.
            for (k, v) in h_inv.iter_mut().enumerate() {
                *v = if k % (n + 1) == 0 { T::one() } else { T::zero() };
            }
            for (pi, &gi) in p.iter_mut().zip(&g) {
                *pi = -gi;
            }
        }

        // Backtracking Armijo with box projection; sufficient decrease is
        // measured against the actual (projected) displacement.
        let mut alpha = T::one();
        let mut accepted: Option<(Vec<T>, T)> = None;
        for _ in 0..50 {
            let mut x_new: Vec<T> = x
                .iter()
                .zip(&p)
                .map(|(&xi, &pi)| xi + alpha * pi)
                .collect();
            clamp_to_box(&mut x_new, bounds);
            let gs: T = x_new
                .iter()
                .zip(&x)
                .zip(&g)
                .map(|((&xn, &xo), &gi)| gi * (xn - xo))
                .sum();
            let f_new = f(&x_new);
            if f_new.is_finite() && f_new <= fx + c1 * gs && gs < T::zero() {
                accepted = Some((x_new, f_new));
                break;
            }
            alpha = alpha * T::from_f64(0.5);
        }

        let Some((x_new, f_new)) = accepted else {
            // No finite decrease along this direction: abort with the best
            // point seen so far.
            return MinimizeResult {
                argmin: best_x,
                value: best_f,
                converged: inf_norm(&g) <= cfg.grad_tol,
                iterations: iter,
            };
        };

        let s: Vec<T> = x_new.iter().zip(&x).map(|(&a, &b)| a - b).collect();
        let g_new = eval_grad(f, &x_new);
        let y: Vec<T> = g_new.iter().zip(&g).map(|(&a, &b)| a - b).collect();

        x = x_new;
        fx = f_new;
        g = g_new;
        if fx < best_f {
            best_f = fx;
            best_x = x.clone();
        }

        if inf_norm(&s) <= cfg.step_tol {
            return MinimizeResult {
                argmin: x,
                value: fx,
                converged: true,
                iterations: iter + 1,
            };
        }

        let sy: T = s.iter().zip(&y).map(|(&a, &b)| a * b).sum();
        let ss: T = s.iter().map(|&a| a * a).sum();
        if sy > T::from_f64(1e-12) * ss.sqrt().max(T::one()) && sy.is_finite() {
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            let rho = T::one() / sy;
            let hy: Vec<T> = (0..n)
                .map(|i| (0..n).map(|j| h_inv[i * n + j] * y[j]).sum())
                .collect();
            let yhy: T = y.iter().zip(&hy).map(|(&a, &b)| a * b).sum();
            for i in 0..n {
                for j in 0..n {
                    let upd = -rho * (hy[i] * s[j] + s[i] * hy[j])
                        + rho * (T::one() + rho * yhy) * s[i] * s[j];
                    h_inv[i * n + j] += upd;
                }
            }
        }
    }

    MinimizeResult {
        argmin: best_x,
        value: best_f,
        converged: false,
        iterations: iterations + 1,
    }
}
