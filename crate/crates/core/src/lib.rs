//! Uplink large-scale MIMO detection without matrix inversion.
//!
//! The MMSE equalizer for an `N x K` uplink (`N` base-station antennas,
//! `K` single-antenna users) reduces to solving `W s = y_hat` where
//! `W = H^T H + sigma^2 I` is symmetric positive definite after the
//! complex system is expanded to an equivalent real one. This crate
//! solves that system iteratively by successive over-relaxation (SOR),
//! avoiding the `O(K^3)` inverse, and provides the references needed to
//! measure the claim: an exact Cholesky-based MMSE solve and the
//! truncated Neumann-series detector, all under a common detector
//! contract with multiplication-count instrumentation.
//!
//! The remaining modules supply the link-level pieces a BER simulation
//! needs: Gray-mapped QAM with a max-log soft demapper, a rate-1/2
//! convolutional code with soft Viterbi decoding, Rayleigh channel and
//! noise generation, and reproducible seeded random streams.
//!
//! All numerics are generic over the scalar type through [`Real`];
//! concrete `f64`/`f32` aliases live at the crate root.

pub mod coding;
pub mod comms;
pub mod detect;
pub mod error;
pub mod linalg;
#[cfg(feature = "oracles")]
pub mod oracle;
pub mod rng;
pub mod scalar;

pub use error::Error;
pub use scalar::Real;

/// Double-precision aliases (the instantiation the simulator uses).
pub type Matrix64 = linalg::Matrix<f64>;
pub type CMatrix64 = linalg::CMatrix<f64>;
pub type RealSystem64 = linalg::RealSystem<f64>;
pub type SplitW64 = linalg::SplitW<f64>;
pub type DetectorConfig64 = detect::DetectorConfig<f64>;
pub type DetectorResult64 = detect::DetectorResult<f64>;
pub type Constellation64 = comms::Constellation<f64>;

/// Single-precision aliases.
pub type Matrix32 = linalg::Matrix<f32>;
pub type CMatrix32 = linalg::CMatrix<f32>;
pub type RealSystem32 = linalg::RealSystem<f32>;
pub type SplitW32 = linalg::SplitW<f32>;
pub type Constellation32 = comms::Constellation<f32>;
