//! Real-valued model construction, the MMSE filtering matrix, exact
//! reference solve, and spectral analysis of the SOR iteration matrix.

mod cholesky;
mod complex;
mod matrix;
mod spectral;
mod system;

pub use cholesky::{cholesky, exact_mmse_solve, CholeskyFactor};
pub use complex::CMatrix;
pub use matrix::Matrix;
pub use spectral::{sor_iteration_matrix, sor_offset_vector, spectral_radius, SpectralEstimate};
pub use system::{
    build_mmse_system, real_expand, split, stack_complex, unstack_real, RealSystem, SplitW,
};

use crate::scalar::Real;

/// Euclidean norm.
pub fn norm2<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

/// Dot product.
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// `||W s - y_hat||_2`, the residual of a candidate solution.
pub fn residual_norm<T: Real>(w: &Matrix<T>, s: &[T], yhat: &[T]) -> T {
    let ws = w.matvec(s);
    ws.iter()
        .zip(yhat)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<T>()
        .sqrt()
}
