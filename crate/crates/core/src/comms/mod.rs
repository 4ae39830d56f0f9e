//! Symbol mapping/demapping, channel and noise generation, SNR calibration.

mod channel;

pub use channel::{gen_channel, gen_noise, snr_to_sigma2, ChannelInstance};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::unstack_real;
use crate::scalar::Real;

/// Square Gray-coded QAM constellation with unit mean symbol energy.
///
/// Each axis carries a reflected-Gray-labeled pulse-amplitude ladder over
/// `{±1, ±3, ...}`, scaled so the mean energy over all points is exactly 1
/// (`1/sqrt(2)` for QPSK, `1/sqrt(10)` for 16-QAM, `1/sqrt(42)` for 64-QAM).
/// A symbol's bit label is the in-phase axis label followed by the
/// quadrature axis label, most significant bit first.
#[derive(Debug, Clone)]
pub struct Constellation<T> {
    order: usize,
    bits_per_axis: usize,
    /// Amplitude of each Gray axis label.
    axis_amps: Vec<T>,
    /// Points indexed by symbol label.
    points: Vec<Complex<T>>,
    scale: T,
}

impl<T: Real> Constellation<T> {
    /// Build a constellation of the given order (4, 16, or 64).
    pub fn new(order: usize) -> Result<Self> {
        let levels = match order {
            4 => 2usize,
            16 => 4,
            64 => 8,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unsupported modulation order {order} (expected 4, 16, or 64)"
                )))
            }
        };
        let bits_per_axis = levels.trailing_zeros() as usize;
        // Mean energy per axis over levels {±1, ±3, ..., ±(L-1)} is
        // (L^2 - 1)/3; two axes double it.
        let mean_sq = 2.0 * ((levels * levels - 1) as f64) / 3.0;
        let scale = T::of(1.0 / mean_sq.sqrt());

        // Position i counts down from the most positive amplitude; its Gray
        // label is i ^ (i >> 1), so axis-adjacent levels differ in one bit
        // and the all-zero label sits at the most positive amplitude.
        let mut axis_amps = vec![T::zero(); levels];
        for i in 0..levels {
            let label = i ^ (i >> 1);
            axis_amps[label] = T::of((levels as f64 - 1.0) - 2.0 * i as f64) * scale;
        }

        let mut points = vec![Complex::new(T::zero(), T::zero()); order];
        for (li, &ai) in axis_amps.iter().enumerate() {
            for (lq, &aq) in axis_amps.iter().enumerate() {
                points[(li << bits_per_axis) | lq] = Complex::new(ai, aq);
            }
        }

        Ok(Self {
            order,
            bits_per_axis,
            axis_amps,
            points,
            scale,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits_per_symbol(&self) -> usize {
        2 * self.bits_per_axis
    }

    /// Points indexed by their Gray bit label.
    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    /// Map a bit stream (values 0/1, length divisible by bits-per-symbol)
    /// to symbols.
    pub fn map_bits(&self, bits: &[u8]) -> Result<Vec<Complex<T>>> {
        let bps = self.bits_per_symbol();
        if bits.len() % bps != 0 {
            return Err(Error::InvalidInput(format!(
                "bit count {} not divisible by {bps} bits per symbol",
                bits.len()
            )));
        }
        Ok(bits
            .chunks_exact(bps)
            .map(|chunk| {
                let mut label = 0usize;
                for &b in chunk {
                    debug_assert!(b <= 1);
                    label = (label << 1) | b as usize;
                }
                self.points[label]
            })
            .collect())
    }

    /// Nearest Gray axis label for one coordinate. The ladder is uniform,
    /// so slicing is index arithmetic rather than a search.
    #[inline]
    fn axis_label(&self, u: T) -> usize {
        let levels = self.axis_amps.len();
        // Invert amp = (L - 1 - 2 i) * scale for the position i.
        let pos = (T::of(levels as f64 - 1.0) - u / self.scale) * T::of(0.5);
        let i = pos
            .round()
            .to_f64()
            .map(|p| p.clamp(0.0, (levels - 1) as f64) as usize)
            .unwrap_or(0);
        i ^ (i >> 1)
    }

    /// Hard decisions for a real-expanded estimate vector (length `2K`):
    /// element `m` pairs with element `m + K` to form `K` complex
    /// estimates, each sliced per axis (valid for square QAM). Returns
    /// `K * bits_per_symbol` bits.
    pub fn demap_hard(&self, s_real: &[T]) -> Result<Vec<u8>> {
        let estimates = unstack_real(s_real)?;
        let mut bits = Vec::with_capacity(estimates.len() * self.bits_per_symbol());
        for est in estimates {
            let li = self.axis_label(est.re);
            let lq = self.axis_label(est.im);
            let label = (li << self.bits_per_axis) | lq;
            for j in (0..self.bits_per_symbol()).rev() {
                bits.push(((label >> j) & 1) as u8);
            }
        }
        Ok(bits)
    }

    /// Max-log LLRs for per-user complex estimates. For bit `b` of a
    /// symbol,
    ///
    /// ```text
    /// LLR_b = (min_{x: b=1} |s - x|^2 - min_{x: b=0} |s - x|^2) / noise_var,
    /// ```
    ///
    /// so positive LLRs favor bit 0. Square QAM decomposes per axis, which
    /// is what is computed here. `noise_var` holds one positive
    /// post-equalization variance per estimate.
    pub fn demap_llr(&self, estimates: &[Complex<T>], noise_var: &[T]) -> Result<Vec<T>> {
        if noise_var.len() != estimates.len() {
            return Err(Error::InvalidInput(format!(
                "{} noise variances for {} estimates",
                noise_var.len(),
                estimates.len()
            )));
        }
        if let Some(i) = noise_var.iter().position(|&v| !(v > T::zero())) {
            return Err(Error::InvalidInput(format!(
                "noise variance must be positive, got {} at index {i}",
                noise_var[i]
            )));
        }
        let mut llrs = Vec::with_capacity(estimates.len() * self.bits_per_symbol());
        for (est, &var) in estimates.iter().zip(noise_var) {
            // I-axis bits then Q-axis bits, matching map_bits.
            self.axis_llrs(est.re, var, &mut llrs);
            self.axis_llrs(est.im, var, &mut llrs);
        }
        Ok(llrs)
    }

    fn axis_llrs(&self, u: T, var: T, out: &mut Vec<T>) {
        let b = self.bits_per_axis;
        for j in 0..b {
            let mut min0 = T::infinity();
            let mut min1 = T::infinity();
            for (label, &amp) in self.axis_amps.iter().enumerate() {
                let d = u - amp;
                let d2 = d * d;
                if (label >> (b - 1 - j)) & 1 == 0 {
                    min0 = min0.min(d2);
                } else {
                    min1 = min1.min(d2);
                }
            }
            out.push((min1 - min0) / var);
        }
    }
}
