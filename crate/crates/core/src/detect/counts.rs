//! Closed-form multiplication counts for `K` users.

use crate::error::{Error, Result};

/// Multiplications for `iters` SOR sweeps on a `2K`-dimensional system:
/// `i (4K^2 + 4K)`. Each of the `2K` elements costs one multiplication for
/// `(1 - w) s_m` plus `2K + 1` for the bracketed term (row sum, reciprocal,
/// relaxation); the one-time `2K` reciprocal cost is excluded.
pub fn sor_mul_count(k: usize, iters: usize) -> u64 {
    assert!(
        k >= 1 && iters >= 1,
        "K and iteration count must be at least 1"
    );
    let k = k as u64;
    iters as u64 * (4 * k * k + 4 * k)
}

/// Multiplications for the `iters`-term Neumann-series detector, as
/// tabulated for the baseline implementation. Only `2 <= iters <= 5` is
/// tabulated; other counts are unsupported. Quadratic in `K` at `i = 2`,
/// cubic from `i = 3` on.
pub fn neumann_mul_count(k: usize, iters: usize) -> Result<u64> {
    if k < 1 {
        return Err(Error::InvalidInput("K must be at least 1".into()));
    }
    let k = k as u64;
    let (k2, k3) = (k * k, k * k * k);
    match iters {
        2 => Ok(12 * k2 - 4 * k),
        3 => Ok(8 * k3 + 4 * k2 - 2 * k),
        4 => Ok(16 * k3 - 4 * k2),
        5 => Ok(24 * k3 - 12 * k2 + 2 * k),
        _ => Err(Error::Unsupported(format!(
            "Neumann multiplication count tabulated only for 2..=5 iterations, got {iters}"
        ))),
    }
}
