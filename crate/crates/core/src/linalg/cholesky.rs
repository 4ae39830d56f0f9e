//! SPD factorization and the exact MMSE reference solve.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::matrix::Matrix;
use super::system::RealSystem;

/// Lower-triangular factor `L` with `W = L L^T`.
#[derive(Debug, Clone)]
pub struct CholeskyFactor<T> {
    l: Matrix<T>,
}

/// Factor a symmetric positive definite matrix. Fails with the pivot index
/// on the first non-positive pivot, which is how non-SPD inputs surface.
pub fn cholesky<T: Real>(w: &Matrix<T>) -> Result<CholeskyFactor<T>> {
    if !w.is_square() {
        return Err(Error::InvalidInput(format!(
            "cholesky requires a square matrix, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    let n = w.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut diag = w[(j, j)];
        for k in 0..j {
            diag -= l[(j, k)] * l[(j, k)];
        }
        if !(diag > T::zero()) {
            return Err(Error::Numerical {
                op: "cholesky",
                index: j,
            });
        }
        let ljj = diag.sqrt();
        l[(j, j)] = ljj;
        for i in (j + 1)..n {
            let mut acc = w[(i, j)];
            for k in 0..j {
                acc -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = acc / ljj;
        }
    }
    Ok(CholeskyFactor { l })
}

impl<T: Real> CholeskyFactor<T> {
    /// Solve `W x = b` by forward then back substitution.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.l.rows();
        assert_eq!(b.len(), n, "rhs length mismatch");
        let mut x = b.to_vec();
        // L z = b
        for i in 0..n {
            let mut acc = x[i];
            for k in 0..i {
                acc -= self.l[(i, k)] * x[k];
            }
            x[i] = acc / self.l[(i, i)];
        }
        // L^T x = z
        for i in (0..n).rev() {
            let mut acc = x[i];
            for k in (i + 1)..n {
                acc -= self.l[(k, i)] * x[k];
            }
            x[i] = acc / self.l[(i, i)];
        }
        x
    }

    pub fn factor(&self) -> &Matrix<T> {
        &self.l
    }
}

/// The exact MMSE estimate `s_hat = W^{-1} y_hat`, computed by Cholesky
/// factorization and two triangular solves (the inverse is never formed).
/// This is the oracle every iterative detector is measured against.
pub fn exact_mmse_solve<T: Real>(sys: &RealSystem<T>) -> Result<Vec<T>> {
    Ok(cholesky(&sys.w)?.solve(&sys.yhat))
}
