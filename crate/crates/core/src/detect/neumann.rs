//! Truncated Neumann-series baseline detector.

use crate::error::{Error, Result};
use crate::linalg::{residual_norm, RealSystem, SplitW};
use crate::scalar::Real;

use super::counts::neumann_mul_count;
use super::{DetectorConfig, DetectorKind, DetectorResult};

/// The `i`-term Neumann series around the diagonal preconditioner,
///
/// ```text
/// W^{-1} ~= sum_{n=0}^{i-1} (I - D^{-1} W)^n D^{-1},
/// ```
///
/// applied to `y_hat` as repeated matrix-vector products: `s^(0) = D^{-1}
/// y_hat` and `s^(n) = D^{-1} y_hat + (I - D^{-1} W) s^(n-1)`; the inverse
/// is never formed. Returns `s^(i-1)`.
///
/// The attached `mul_count` is the tabulated closed form (defined for
/// `2 <= i <= 5` on even dimensions), not a runtime count; see
/// [`neumann_mul_count`].
pub fn neumann_detect<T: Real>(
    sys: &RealSystem<T>,
    split: &SplitW<T>,
    cfg: &DetectorConfig<T>,
) -> Result<DetectorResult<T>> {
    if cfg.kind() != DetectorKind::Neumann {
        return Err(Error::InvalidInput(format!(
            "neumann_detect called with {:?} config",
            cfg.kind()
        )));
    }
    let n = split.dim();
    if sys.yhat.len() != n {
        return Err(Error::InvalidInput(format!(
            "y_hat has length {}, expected {n}",
            sys.yhat.len()
        )));
    }

    let mut recip = vec![T::zero(); n];
    for (m, &d) in split.d().iter().enumerate() {
        if d == T::zero() {
            return Err(Error::Numerical {
                op: "neumann_detect",
                index: m,
            });
        }
        recip[m] = T::one() / d;
    }

    let w_mat = split.w();
    let dinv_yhat: Vec<T> = sys.yhat.iter().zip(&recip).map(|(&y, &r)| y * r).collect();

    let mut s = dinv_yhat.clone();
    let mut residuals = cfg
        .track_residuals()
        .then(|| Vec::with_capacity(cfg.iterations()));
    if let Some(res) = residuals.as_mut() {
        res.push(residual_norm(w_mat, &s, &sys.yhat));
    }

    for _ in 1..cfg.iterations() {
        let ws = w_mat.matvec(&s);
        for m in 0..n {
            s[m] = dinv_yhat[m] + s[m] - recip[m] * ws[m];
        }
        if let Some(res) = residuals.as_mut() {
            res.push(residual_norm(w_mat, &s, &sys.yhat));
        }
    }

    let mul_count = if n % 2 == 0 {
        neumann_mul_count(n / 2, cfg.iterations()).ok()
    } else {
        None
    };

    Ok(DetectorResult {
        s_hat: s,
        residuals,
        mul_count,
    })
}
