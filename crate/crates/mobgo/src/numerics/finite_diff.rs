//! Central finite-difference gradients.

use crate::scalar::Scalar;

/// Central-difference gradient of `f` at `x` with step `h`.
///
/// Falls back to the one-sided difference in a coordinate when one side of
/// the stencil evaluates non-finite.
pub fn finite_diff_grad<T: Scalar>(f: &mut dyn FnMut(&[T]) -> T, x: &[T], h: T) -> Vec<T> {
    let mut xp = x.to_vec();
    let mut f0 = None; // only evaluated if a fallback is needed
    let two_h = h + h;
    let mut grad = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let xi = x[i];
        xp[i] = xi + h;
        let fp = f(&xp);
        xp[i] = xi - h;
        let fm = f(&xp);
        xp[i] = xi;
        let g = match (fp.is_finite(), fm.is_finite()) {
            (true, true) => (fp - fm) / two_h,
            (true, false) => {
                let f0 = *f0.get_or_insert_with(|| f(x));
                (fp - f0) / h
            }
            (false, true) => {
                let f0 = *f0.get_or_insert_with(|| f(x));
                (f0 - fm) / h
            }
            (false, false) => T::zero(),
        };
        grad.push(g);
    }
    grad
}
