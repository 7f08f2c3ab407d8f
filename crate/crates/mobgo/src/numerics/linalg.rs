//! Minimal dense linear algebra: just enough for GP posteriors and BFGS.
//!
//! Row-major square-free dense matrix with Cholesky factorization and
//! triangular solves. Kernel matrices here are small (a few hundred rows),
//! so simple loops beat pulling in a full linear-algebra stack.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(&a, &b)| a * b).sum()
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm of (self - other).
    pub fn frobenius_distance(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<T>()
            .sqrt()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&a| a * a).sum::<T>().sqrt()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Lower-triangular Cholesky factor L with L * L^T = A + jitter * I.
#[derive(Debug, Clone)]
pub struct CholeskyFactor<T> {
    pub lower: Matrix<T>,
    /// Jitter that had to be added to the diagonal before the factorization
    /// succeeded (zero if none was needed).
    pub jitter: T,
}

impl<T: Scalar> CholeskyFactor<T> {
    pub fn dim(&self) -> usize {
        self.lower.rows()
    }

    /// Solve L x = b (forward substitution).
    pub fn solve_lower(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let l = &self.lower;
        let mut x = vec![T::zero(); n];
        for i in 0..n {
            let mut s = b[i];
            for j in 0..i {
                s -= l[(i, j)] * x[j];
            }
            x[i] = s / l[(i, i)];
        }
        x
    }

    /// Solve L^T x = b (backward substitution).
    pub fn solve_upper(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let l = &self.lower;
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in i + 1..n {
                s -= l[(j, i)] * x[j];
            }
            x[i] = s / l[(i, i)];
        }
        x
    }

    /// Solve (L L^T) x = b.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        self.solve_upper(&self.solve_lower(b))
    }

    /// log det(L L^T) = 2 * sum log L_ii.
    pub fn log_det(&self) -> T {
        let two = T::from_f64(2.0);
        (0..self.dim())
            .map(|i| self.lower[(i, i)].ln())
            .sum::<T>()
            * two
    }

    /// Explicit inverse of A = L L^T, column by column.
    pub fn inverse(&self) -> Matrix<T> {
        let n = self.dim();
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e[j] = T::one();
            let col = self.solve(&e);
            e[j] = T::zero();
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }

    /// Reconstruct L L^T.
    pub fn reconstruct(&self) -> Matrix<T> {
        let n = self.dim();
        let l = &self.lower;
        Matrix::from_fn(n, n, |i, j| {
            let k_max = i.min(j) + 1;
            (0..k_max).map(|k| l[(i, k)] * l[(j, k)]).sum()
        })
    }
}

/// Plain Cholesky of a symmetric positive-definite matrix; fails on any
/// non-positive pivot.
fn cholesky_raw<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= T::zero() || !s.is_finite() {
                    return None;
                }
                l[(i, j)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Some(l)
}

/// Cholesky factorization with a jitter ladder.
///
/// Starts at 1e-10 * trace(A)/n and escalates tenfold up to 1e-4 * trace(A)/n;
/// kernel matrices with tight lengthscales are routinely near-singular, and
/// the escalation keeps the factorization usable without distorting
/// well-conditioned inputs (first attempt is jitter-free).
pub fn cholesky_factor<T: Scalar>(a: &Matrix<T>) -> Result<CholeskyFactor<T>> {
    assert_eq!(a.rows(), a.cols(), "cholesky needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return Ok(CholeskyFactor {
            lower: Matrix::zeros(0, 0),
            jitter: T::zero(),
        });
    }
    if let Some(lower) = cholesky_raw(a) {
        return Ok(CholeskyFactor {
            lower,
            jitter: T::zero(),
        });
    }
    let scale = a.trace() / T::from_f64(n as f64);
    let scale = if scale > T::zero() { scale } else { T::one() };
    let mut jitter = T::from_f64(1e-10) * scale;
    let max_jitter = T::from_f64(1e-4) * scale;
    while jitter <= max_jitter {
        let mut aj = a.clone();
        for i in 0..n {
            aj[(i, i)] += jitter;
        }
        if let Some(lower) = cholesky_raw(&aj) {
            return Ok(CholeskyFactor { lower, jitter });
        }
        jitter = jitter * T::from_f64(10.0);
    }
    Err(Error::Factorization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_factors_to_identity() {
        let a = Matrix::<f64>::identity(4);
        let f = cholesky_factor(&a).unwrap();
        assert_eq!(f.lower, Matrix::identity(4));
        assert_eq!(f.jitter, 0.0);
    }

    #[test]
    fn two_by_two_hand_value() {
        // [[4,2],[2,3]] => L = [[2,0],[1,sqrt(2)]]; checked by multiplying
        // L L^T back out by hand.
        let a = Matrix::<f64>::from_rows(vec![vec![4.0, 2.0], vec![2.0, 3.0]]);
        let f = cholesky_factor(&a).unwrap();
        assert!((f.lower[(0, 0)] - 2.0).abs() < 1e-15);
        assert!((f.lower[(1, 0)] - 1.0).abs() < 1e-15);
        assert!((f.lower[(1, 1)] - 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(f.lower[(0, 1)], 0.0);
    }

    #[test]
    fn random_spd_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 20;
        let m = Matrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
        // A = M^T M + I is SPD.
        let a = Matrix::from_fn(n, n, |i, j| {
            let dot: f64 = (0..n).map(|k| m[(k, i)] * m[(k, j)]).sum();
            dot + if i == j { 1.0 } else { 0.0 }
        });
        let f = cholesky_factor(&a).unwrap();
        let rel = f.reconstruct().frobenius_distance(&a) / a.frobenius_norm();
        assert!(rel < 1e-8, "relative reconstruction error {rel}");
    }

    #[test]
    fn near_singular_escalates_jitter() {
        // Rank-one plus nothing: needs jitter, must still reconstruct within
        // the documented bound relative to A + jitter I.
        let v = [1.0, 1.0, 1.0];
        let a = Matrix::from_fn(3, 3, |i, j| v[i] * v[j]);
        let f = cholesky_factor(&a).unwrap();
        assert!(f.jitter > 0.0);
        let mut aj = a.clone();
        for i in 0..3 {
            aj[(i, i)] += f.jitter;
        }
        let rel = f.reconstruct().frobenius_distance(&aj) / aj.frobenius_norm();
        assert!(rel < 1e-8, "relative reconstruction error {rel}");
    }

    #[test]
    fn indefinite_matrix_fails() {
        let a = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, -5.0]]);
        assert!(matches!(cholesky_factor(&a), Err(Error::Factorization)));
    }

    #[test]
    fn solve_round_trip() {
        let a = Matrix::from_rows(vec![
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, 0.2],
            vec![0.5, 0.2, 2.0],
        ]);
        let f = cholesky_factor(&a).unwrap();
        let x_true: [f64; 3] = [1.0, -2.0, 0.5];
        let b = a.mul_vec(&x_true);
        let x = f.solve(&b);
        for (xi, ti) in x.iter().zip(&x_true) {
            assert!((xi - ti).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_matches_solve() {
        let a = Matrix::from_rows(vec![vec![2.0, 0.3], vec![0.3, 1.5]]);
        let f = cholesky_factor(&a).unwrap();
        let inv = f.inverse();
        let prod = Matrix::from_fn(2, 2, |i, j| {
            (0..2).map(|k| a[(i, k)] * inv[(k, j)]).sum::<f64>()
        });
        assert!(prod.frobenius_distance(&Matrix::identity(2)) < 1e-12);
    }

    #[test]
    fn conditioned_up_to_1e10_with_jitter() {
        // Diagonal with condition number 1e10: still factors and reconstructs.
        let n = 6;
        let a = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                10f64.powi(-(i as i32) * 2).max(1e-10)
            } else {
                0.0
            }
        });
        let f = cholesky_factor(&a).unwrap();
        let mut aj = a.clone();
        for i in 0..n {
            aj[(i, i)] += f.jitter;
        }
        let rel = f.reconstruct().frobenius_distance(&aj) / aj.frobenius_norm();
        assert!(rel < 1e-8);
    }

    #[test]
    fn generic_over_f32() {
        let a = Matrix::<f32>::from_rows(vec![vec![4.0, 2.0], vec![2.0, 3.0]]);
        let f = cholesky_factor(&a).unwrap();
        assert!((f.lower[(0, 0)] - 2.0).abs() < 1e-6);
    }
}
