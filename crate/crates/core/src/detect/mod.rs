//! The three detectors — exact MMSE, SOR (with Gauss-Seidel as the `w = 1`
//! special case), and the Neumann-series baseline — under one contract.

mod counts;
mod neumann;
mod sor;

pub use counts::{neumann_mul_count, sor_mul_count};
pub use neumann::neumann_detect;
pub use sor::sor_detect;

use crate::error::{Error, Result};
use crate::linalg::{exact_mmse_solve, residual_norm, RealSystem, SplitW};
use crate::scalar::Real;

/// Which detection algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectorKind {
    ExactMmse,
    Sor,
    GaussSeidel,
    Neumann,
}

/// Detector configuration. Constructors enforce the invariants: the SOR
/// relaxation parameter must lie in the convergence range `(0, 2)`,
/// Gauss-Seidel is SOR with `w` pinned to 1, and iteration counts are at
/// least 1.
#[derive(Debug, Clone, Copy)]
pub struct DetectorConfig<T> {
    kind: DetectorKind,
    w: T,
    iterations: usize,
    track_residuals: bool,
}

impl<T: Real> DetectorConfig<T> {
    pub fn exact_mmse() -> Self {
        Self {
            kind: DetectorKind::ExactMmse,
            w: T::one(),
            iterations: 1,
            track_residuals: false,
        }
    }

    pub fn sor(w: T, iterations: usize) -> Result<Self> {
        if !(w > T::zero() && w < T::of(2.0)) {
            return Err(Error::InvalidInput(format!(
                "SOR relaxation parameter must lie in (0, 2), got {w}"
            )));
        }
        Self::check_iterations(iterations)?;
        Ok(Self {
            kind: DetectorKind::Sor,
            w,
            iterations,
            track_residuals: false,
        })
    }

    pub fn gauss_seidel(iterations: usize) -> Result<Self> {
        Self::check_iterations(iterations)?;
        Ok(Self {
            kind: DetectorKind::GaussSeidel,
            w: T::one(),
            iterations,
            track_residuals: false,
        })
    }

    pub fn neumann(iterations: usize) -> Result<Self> {
        Self::check_iterations(iterations)?;
        Ok(Self {
            kind: DetectorKind::Neumann,
            w: T::one(),
            iterations,
            track_residuals: false,
        })
    }

    fn check_iterations(iterations: usize) -> Result<()> {
        if iterations == 0 {
            return Err(Error::InvalidInput(
                "iteration count must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Record `||W s - y_hat||` after every iteration.
    pub fn with_residual_tracking(mut self, on: bool) -> Self {
        self.track_residuals = on;
        self
    }

    pub fn kind(&self) -> DetectorKind {
        self.kind
    }

    /// The relaxation parameter actually applied (1 for Gauss-Seidel).
    pub fn effective_w(&self) -> T {
        match self.kind {
            DetectorKind::GaussSeidel => T::one(),
            _ => self.w,
        }
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn track_residuals(&self) -> bool {
        self.track_residuals
    }
}

/// Output of one detection.
#[derive(Debug, Clone)]
pub struct DetectorResult<T> {
    /// Estimated real-expanded symbol vector (length `2K`).
    pub s_hat: Vec<T>,
    /// `||W s^(i) - y_hat||_2` after each iteration, when tracking is on.
    pub residuals: Option<Vec<T>>,
    /// Real multiplications consumed by the algorithm's update formulas:
    /// instrumented at runtime for SOR/Gauss-Seidel, the tabulated closed
    /// form for Neumann (`None` when no count is defined, e.g. exact MMSE).
    pub mul_count: Option<u64>,
}

/// Dispatch over [`DetectorConfig::kind`].
pub fn detect<T: Real>(
    sys: &RealSystem<T>,
    split: &SplitW<T>,
    cfg: &DetectorConfig<T>,
) -> Result<DetectorResult<T>> {
    if split.dim() != sys.dim() {
        return Err(Error::InvalidInput(format!(
            "split dimension {} does not match system dimension {}",
            split.dim(),
            sys.dim()
        )));
    }
    match cfg.kind {
        DetectorKind::ExactMmse => {
            let s_hat = exact_mmse_solve(sys)?;
            let residuals = cfg
                .track_residuals
                .then(|| vec![residual_norm(&sys.w, &s_hat, &sys.yhat)]);
            Ok(DetectorResult {
                s_hat,
                residuals,
                mul_count: None,
            })
        }
        DetectorKind::Sor | DetectorKind::GaussSeidel => sor_detect(sys, split, cfg),
        DetectorKind::Neumann => neumann_detect(sys, split, cfg),
    }
}
