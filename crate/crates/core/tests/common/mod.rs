//! Shared draw helpers for the integration suites.

use num_complex::Complex;
use rand::Rng;

use sorlink::comms::{gen_channel, gen_noise, snr_to_sigma2, Constellation};
use sorlink::linalg::{build_mmse_system, real_expand, split, RealSystem, SplitW};
use sorlink::rng::substream;

/// One realistic detection system: random Rayleigh channel, random 64-QAM
/// transmit vector, noise at the given SNR, expanded and normal-equated.
pub fn draw_system(
    n: usize,
    k: usize,
    snr_db: f64,
    seed: u64,
    idx: u64,
) -> (RealSystem<f64>, SplitW<f64>) {
    let sigma2 = snr_to_sigma2(snr_db, k);
    let hc = gen_channel::<f64, _>(n, k, &mut substream(seed, 1, idx, 0));
    let constellation = Constellation::<f64>::new(64).unwrap();
    let mut bit_rng = substream(seed, 2, idx, 0);
    let bits: Vec<u8> = (0..6 * k).map(|_| bit_rng.random_range(0..2u8)).collect();
    let sc = constellation.map_bits(&bits).unwrap();
    let nc = gen_noise(n, sigma2, &mut substream(seed, 3, idx, 0));
    let yc: Vec<Complex<f64>> = hc.matvec(&sc).iter().zip(&nc).map(|(a, b)| a + b).collect();
    let (h, y) = real_expand(&hc, &yc).unwrap();
    let sys = build_mmse_system(h, y, sigma2).unwrap();
    let sp = split(&sys.w).unwrap();
    (sys, sp)
}

/// Relative Euclidean distance between two vectors.
pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let norm: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    diff / norm
}
