//! Rayleigh channel and noise generation, SNR calibration.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::CMatrix;
use crate::scalar::Real;

/// One channel realization together with the complex noise variance it is
/// to be observed under.
#[derive(Debug, Clone)]
pub struct ChannelInstance<T> {
    pub hc: CMatrix<T>,
    pub sigma2_c: T,
}

#[inline]
fn normal<T: Real, R: Rng>(rng: &mut R) -> T {
    let z: f64 = rng.sample(StandardNormal);
    T::of(z)
}

/// Draw an `N x K` flat Rayleigh fading matrix: i.i.d. circularly-symmetric
/// complex Gaussian entries with zero mean and unit variance (variance split
/// evenly across real and imaginary parts). Entries are drawn row-major,
/// real part before imaginary part, so a given generator state maps to a
/// fixed matrix.
pub fn gen_channel<T: Real, R: Rng>(n: usize, k: usize, rng: &mut R) -> CMatrix<T> {
    assert!(n >= 1 && k >= 1, "channel dimensions must be at least 1");
    let half = T::of(0.5).sqrt();
    let data = (0..n * k)
        .map(|_| {
            let re = normal::<T, _>(rng) * half;
            let im = normal::<T, _>(rng) * half;
            Complex::new(re, im)
        })
        .collect();
    CMatrix::new(n, k, data).expect("sampled entries are finite")
}

/// Draw a length-`N` noise vector with i.i.d. `CN(0, sigma2_c)` entries.
/// `sigma2_c = 0` yields the exact zero vector.
pub fn gen_noise<T: Real, R: Rng>(n: usize, sigma2_c: T, rng: &mut R) -> Vec<Complex<T>> {
    assert!(sigma2_c >= T::zero(), "noise variance must be non-negative");
    let half = (sigma2_c * T::of(0.5)).sqrt();
    (0..n)
        .map(|_| {
            let re = normal::<T, _>(rng) * half;
            let im = normal::<T, _>(rng) * half;
            Complex::new(re, im)
        })
        .collect()
}

/// Complex noise variance for a target SNR in dB, with SNR defined as total
/// received signal power per receive antenna (K users at unit symbol energy
/// over a unit-variance channel) divided by noise power per antenna:
/// `sigma2_c = K / 10^(snr_db / 10)`.
pub fn snr_to_sigma2<T: Real>(snr_db: T, k: usize) -> T {
    assert!(k >= 1, "K must be at least 1");
    T::of(k as f64) / T::of(10.0).powf(snr_db / T::of(10.0))
}
