//! Real expansion of the complex model and the MMSE normal equations.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::complex::CMatrix;
use super::matrix::Matrix;

/// The real-valued detection system: `y = H s + n` with `H` of size
/// `2N x 2K`, plus the MMSE normal-equation quantities `G = H^T H`,
/// `W = G + sigma2 I` and `y_hat = H^T y`.
#[derive(Debug, Clone)]
pub struct RealSystem<T> {
    pub h: Matrix<T>,
    pub y: Vec<T>,
    pub yhat: Vec<T>,
    pub g: Matrix<T>,
    pub w: Matrix<T>,
    pub sigma2: T,
}

impl<T: Real> RealSystem<T> {
    /// Dimension of the unknown vector (`2K`).
    pub fn dim(&self) -> usize {
        self.w.rows()
    }
}

/// Expand a complex channel/observation pair into the equivalent real model:
/// `H = [Re -Im; Im Re]` (`2N x 2K`) and `y = [Re(y_c); Im(y_c)]`.
pub fn real_expand<T: Real>(hc: &CMatrix<T>, yc: &[Complex<T>]) -> Result<(Matrix<T>, Vec<T>)> {
    let (n, k) = (hc.rows(), hc.cols());
    if yc.len() != n {
        return Err(Error::InvalidInput(format!(
            "received vector has length {}, expected {n}",
            yc.len()
        )));
    }
    let mut h = Matrix::zeros(2 * n, 2 * k);
    for r in 0..n {
        for c in 0..k {
            let z = hc.at(r, c);
            h[(r, c)] = z.re;
            h[(r, c + k)] = -z.im;
            h[(r + n, c)] = z.im;
            h[(r + n, c + k)] = z.re;
        }
    }
    let mut y = Vec::with_capacity(2 * n);
    y.extend(yc.iter().map(|z| z.re));
    y.extend(yc.iter().map(|z| z.im));
    Ok((h, y))
}

/// Form the MMSE normal equations `G = H^T H`, `W = G + sigma2 I`,
/// `y_hat = H^T y`. `sigma2` is the noise-to-symbol variance ratio per real
/// dimension, which for unit-energy complex symbols equals the complex noise
/// variance; it must be positive for `W` to be positive definite.
pub fn build_mmse_system<T: Real>(h: Matrix<T>, y: Vec<T>, sigma2: T) -> Result<RealSystem<T>> {
    if !(sigma2 > T::zero()) || !sigma2.is_finite() {
        return Err(Error::InvalidInput(format!(
            "sigma2 must be positive and finite, got {sigma2}"
        )));
    }
    if y.len() != h.rows() {
        return Err(Error::InvalidInput(format!(
            "y has length {}, expected {}",
            y.len(),
            h.rows()
        )));
    }
    let (rows, cols) = (h.rows(), h.cols());

    // Upper triangle once, mirrored, so G is symmetric as stored.
    let mut g = Matrix::zeros(cols, cols);
    for i in 0..cols {
        for j in i..cols {
            let mut acc = T::zero();
            for r in 0..rows {
                acc += h[(r, i)] * h[(r, j)];
            }
            g[(i, j)] = acc;
            g[(j, i)] = acc;
        }
    }

    let mut w = g.clone();
    for i in 0..cols {
        w[(i, i)] += sigma2;
    }

    let yhat = (0..cols)
        .map(|c| (0..rows).map(|r| h[(r, c)] * y[r]).sum())
        .collect();

    Ok(RealSystem {
        h,
        y,
        yhat,
        g,
        w,
        sigma2,
    })
}

/// The splitting `W = D + L + L^T`: diagonal, strictly lower triangle
/// (packed row-major), and the full matrix retained for upper-triangle
/// access. Reassembles `W` bit-identically since it partitions the stored
/// entries.
#[derive(Debug, Clone)]
pub struct SplitW<T> {
    d: Vec<T>,
    l: Vec<T>,
    w: Matrix<T>,
}

impl<T: Real> SplitW<T> {
    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// Diagonal of `W`.
    pub fn d(&self) -> &[T] {
        &self.d
    }

    /// Strictly-lower entry `L[m, k]` for `k < m`.
    #[inline]
    pub fn l_at(&self, m: usize, k: usize) -> T {
        debug_assert!(k < m);
        self.l[m * (m - 1) / 2 + k]
    }

    /// The matrix the split was taken from.
    pub fn w(&self) -> &Matrix<T> {
        &self.w
    }

    /// Rebuild `D + L + L^T`.
    pub fn reassemble(&self) -> Matrix<T> {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for m in 0..n {
            out[(m, m)] = self.d[m];
            for k in 0..m {
                let v = self.l_at(m, k);
                out[(m, k)] = v;
                out[(k, m)] = self.w[(k, m)];
            }
        }
        out
    }
}

/// Split a square symmetric matrix into `D + L + L^T`.
pub fn split<T: Real>(w: &Matrix<T>) -> Result<SplitW<T>> {
    if !w.is_square() {
        return Err(Error::InvalidInput(format!(
            "split requires a square matrix, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    let n = w.rows();
    let d = (0..n).map(|i| w[(i, i)]).collect();
    let mut l = Vec::with_capacity(n * (n - 1) / 2);
    for m in 0..n {
        for k in 0..m {
            l.push(w[(m, k)]);
        }
    }
    Ok(SplitW { d, l, w: w.clone() })
}

/// Stack a complex vector into its real expansion `[Re; Im]`.
pub fn stack_complex<T: Real>(v: &[Complex<T>]) -> Vec<T> {
    let mut out = Vec::with_capacity(2 * v.len());
    out.extend(v.iter().map(|z| z.re));
    out.extend(v.iter().map(|z| z.im));
    out
}

/// Regroup a real-expanded vector of length `2K` into `K` complex values:
/// element `m` pairs with element `m + K`.
pub fn unstack_real<T: Real>(v: &[T]) -> Result<Vec<Complex<T>>> {
    if v.len() % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "real-expanded vector must have even length, got {}",
            v.len()
        )));
    }
    let k = v.len() / 2;
    Ok((0..k).map(|i| Complex::new(v[i], v[i + k])).collect())
}
