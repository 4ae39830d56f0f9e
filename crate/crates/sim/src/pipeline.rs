//! The per-point Monte Carlo loop: bits through the channel and back.

use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use sorlink::coding::{ConvCode, Interleaver};
use sorlink::comms::{gen_channel, gen_noise, snr_to_sigma2, Constellation};
use sorlink::detect::{detect, DetectorConfig};
use sorlink::linalg::{build_mmse_system, real_expand, split, unstack_real};
use sorlink::rng::substream;

use crate::config::{DetectorId, SimConfig};
use crate::error::{Result, SimError};

/// LLRs are clipped here before the decoder.
pub const LLR_CLAMP: f64 = 50.0;

/// Stream purposes for substream derivation. Streams are keyed by
/// `(purpose, frame)` only, never by detector or SNR, so every detector and
/// every grid point sees the same channels, symbols, and noise directions.
mod purpose {
    pub const INFO_BITS: u64 = 1;
    pub const CHANNEL: u64 = 2;
    pub const NOISE: u64 = 3;
    pub const INTERLEAVER: u64 = 4;
    pub const RHO_DIAGNOSTIC: u64 = 5;
}

pub use purpose::RHO_DIAGNOSTIC;

/// One (detector, SNR, w, iterations) grid point.
#[derive(Debug, Clone, Copy)]
pub struct PointSpec {
    pub detector: DetectorId,
    pub snr_db: f64,
    /// Relaxation parameter; only meaningful for SOR.
    pub w: Option<f64>,
    /// Iteration count; `None` for the exact solver.
    pub iterations: Option<usize>,
}

/// One output row. `wall_ms` stays out of the CSV (it lands in the
/// sidecar) so identical seeds reproduce byte-identical result files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub detector: String,
    pub n: usize,
    pub k: usize,
    pub snr_db: f64,
    pub w: Option<f64>,
    pub iterations: Option<usize>,
    pub frames: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub mul_count_per_detect: Option<u64>,
    #[serde(skip)]
    pub wall_ms: u128,
}

struct FrameOutcome {
    bits: u64,
    errors: u64,
    mul_count: Option<u64>,
}

/// Everything a frame needs, built once per point and shared read-only
/// across worker threads.
struct PointContext<'a> {
    cfg: &'a SimConfig,
    constellation: Constellation<f64>,
    code: Option<ConvCode>,
    det_cfg: DetectorConfig<f64>,
    sigma2: f64,
    info_bits: usize,
}

impl<'a> PointContext<'a> {
    fn new(cfg: &'a SimConfig, point: &PointSpec) -> Result<Self> {
        cfg.validate()?;
        let det_cfg = detector_config(point)?;
        let constellation = Constellation::new(cfg.modulation)?;
        let code = cfg.coded.then(ConvCode::rate_half_k7);
        let sigma2 = snr_to_sigma2(point.snr_db, cfg.k);
        if !(sigma2 > 0.0) || !sigma2.is_finite() {
            return Err(SimError::Config(format!(
                "SNR {} dB yields unusable noise variance {sigma2}",
                point.snr_db
            )));
        }
        Ok(Self {
            cfg,
            constellation,
            code,
            det_cfg,
            sigma2,
            info_bits: cfg.frame_info_bits(),
        })
    }

    fn run_frame(&self, frame: u64) -> Result<FrameOutcome> {
        let seed = self.cfg.master_seed;
        let mut bit_rng = substream(seed, purpose::INFO_BITS, frame, 0);
        let info: Vec<u8> = (0..self.info_bits)
            .map(|_| bit_rng.random_range(0..2u8))
            .collect();

        let (tx_bits, interleaver) = match &self.code {
            Some(code) => {
                let coded = code.encode(&info);
                let il = Interleaver::random(
                    coded.len(),
                    &mut substream(seed, purpose::INTERLEAVER, frame, 0),
                );
                (il.interleave(&coded)?, Some(il))
            }
            None => (info.clone(), None),
        };

        let symbols = self.constellation.map_bits(&tx_bits)?;
        let k = self.cfg.k;
        let uses = symbols.len() / k;
        let mut ch_rng = substream(seed, purpose::CHANNEL, frame, 0);
        let mut noise_rng = substream(seed, purpose::NOISE, frame, 0);
        let noise_var = vec![self.sigma2; k];

        let mut mul_count = None;
        let mut llrs = Vec::new();
        let mut hard_bits = Vec::new();
        for use_idx in 0..uses {
            let sc = &symbols[use_idx * k..(use_idx + 1) * k];
            let hc = gen_channel::<f64, _>(self.cfg.n, k, &mut ch_rng);
            let nc = gen_noise(self.cfg.n, self.sigma2, &mut noise_rng);
            let yc: Vec<Complex<f64>> = hc.matvec(sc).iter().zip(&nc).map(|(a, b)| a + b).collect();
            let (h, y) = real_expand(&hc, &yc)?;
            let sys = build_mmse_system(h, y, self.sigma2)?;
            let sp = split(&sys.w)?;
            let det = detect(&sys, &sp, &self.det_cfg).map_err(|e| match e {
                sorlink::Error::Numerical { .. } => {
                    SimError::Numerical(format!("{e} (frame {frame}, channel use {use_idx})"))
                }
                other => SimError::from(other),
            })?;
            mul_count = mul_count.or(det.mul_count);

            if self.code.is_some() {
                let ests = unstack_real(&det.s_hat)?;
                llrs.extend(self.constellation.demap_llr(&ests, &noise_var)?);
            } else {
                hard_bits.extend(self.constellation.demap_hard(&det.s_hat)?);
            }
        }

        let (decided, reference) = match (&self.code, &interleaver) {
            (Some(code), Some(il)) => {
                let mut dellrs = il.deinterleave(&llrs)?;
                for l in dellrs.iter_mut() {
                    *l = l.clamp(-LLR_CLAMP, LLR_CLAMP);
                }
                (code.decode_soft(&dellrs)?, &info)
            }
            _ => (hard_bits, &tx_bits),
        };

        let errors = decided
            .iter()
            .zip(reference)
            .filter(|(a, b)| a != b)
            .count() as u64;
        Ok(FrameOutcome {
            bits: reference.len() as u64,
            errors,
            mul_count,
        })
    }
}

fn detector_config(point: &PointSpec) -> Result<DetectorConfig<f64>> {
    let iterations = point.iterations.unwrap_or(1);
    Ok(match point.detector {
        DetectorId::Mmse => DetectorConfig::exact_mmse(),
        DetectorId::Sor => {
            let w = point.w.ok_or_else(|| {
                SimError::Config("SOR point without a relaxation parameter".into())
            })?;
            DetectorConfig::sor(w, iterations)?
        }
        DetectorId::Gs => DetectorConfig::gauss_seidel(iterations)?,
        DetectorId::Neumann => DetectorConfig::neumann(iterations)?,
    })
}

/// Frames processed in parallel per early-stop check; stopping at chunk
/// boundaries keeps the processed-frame count independent of scheduling.
const CHUNK: u64 = 64;

/// Run one grid point: frames stream through encode, map, fade, detect,
/// demap, decode, and bit errors accumulate until `min_errors` (checked at
/// chunk boundaries) or the trial budget is reached. Deterministic in
/// `(config, point)`; frames execute in parallel.
pub fn run_point(cfg: &SimConfig, point: &PointSpec) -> Result<ResultRow> {
    let started = std::time::Instant::now();
    let ctx = PointContext::new(cfg, point)?;

    let mut frames = 0u64;
    let mut bit_errors = 0u64;
    let mut total_bits = 0u64;
    let mut mul_count = None;
    let budget = cfg.trials as u64;
    while frames < budget {
        let batch = CHUNK.min(budget - frames);
        let outcomes: Vec<FrameOutcome> = (frames..frames + batch)
            .into_par_iter()
            .map(|f| ctx.run_frame(f))
            .collect::<Result<_>>()?;
        for o in outcomes {
            bit_errors += o.errors;
            total_bits += o.bits;
            mul_count = mul_count.or(o.mul_count);
        }
        frames += batch;
        if cfg.min_errors > 0 && bit_errors >= cfg.min_errors {
            break;
        }
    }

    Ok(ResultRow {
        detector: point.detector.name().to_string(),
        n: cfg.n,
        k: cfg.k,
        snr_db: point.snr_db,
        w: point.w,
        iterations: point.iterations,
        frames,
        bit_errors,
        ber: bit_errors as f64 / total_bits as f64,
        mul_count_per_detect: mul_count,
        wall_ms: started.elapsed().as_millis(),
    })
}
