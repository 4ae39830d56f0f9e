//! Experiment configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Detector selector as it appears in configs, CLI lists, and CSV rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorId {
    Mmse,
    Sor,
    Gs,
    Neumann,
}

impl DetectorId {
    pub fn name(&self) -> &'static str {
        match self {
            DetectorId::Mmse => "mmse",
            DetectorId::Sor => "sor",
            DetectorId::Gs => "gs",
            DetectorId::Neumann => "neumann",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "mmse" => Ok(DetectorId::Mmse),
            "sor" => Ok(DetectorId::Sor),
            "gs" => Ok(DetectorId::Gs),
            "neumann" => Ok(DetectorId::Neumann),
            other => Err(SimError::Config(format!(
                "unknown detector '{other}' (expected mmse, sor, gs, or neumann)"
            ))),
        }
    }
}

/// Frames aim for this many information bits; the actual frame length is
/// rounded up until the coded (or raw) bits fill an integer number of
/// K-user symbol vectors.
pub const TARGET_INFO_BITS: usize = 570;

/// Full description of one experiment run. Serializes to/from the JSON
/// config file and the reproducibility sidecar.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    #[serde(default = "defaults::n")]
    pub n: usize,
    #[serde(default = "defaults::k")]
    pub k: usize,
    /// Modulation order: 4, 16, or 64.
    #[serde(default = "defaults::modulation")]
    pub modulation: usize,
    #[serde(default = "defaults::coded")]
    pub coded: bool,
    #[serde(default = "defaults::snr_db_grid")]
    pub snr_db_grid: Vec<f64>,
    #[serde(default = "defaults::w_grid")]
    pub w_grid: Vec<f64>,
    #[serde(default = "defaults::iterations_grid")]
    pub iterations_grid: Vec<usize>,
    #[serde(default = "defaults::detectors")]
    pub detectors: Vec<DetectorId>,
    /// Frames per point (upper bound when early stop is enabled).
    #[serde(default = "defaults::trials")]
    pub trials: usize,
    #[serde(default = "defaults::master_seed")]
    pub master_seed: u64,
    /// Stop a point once this many bit errors accumulate (0 disables).
    #[serde(default = "defaults::min_errors")]
    pub min_errors: u64,
}

mod defaults {
    use super::DetectorId;

    pub fn n() -> usize {
        64
    }
    pub fn k() -> usize {
        8
    }
    pub fn modulation() -> usize {
        64
    }
    pub fn coded() -> bool {
        true
    }
    pub fn snr_db_grid() -> Vec<f64> {
        (0..=8).map(f64::from).collect()
    }
    pub fn w_grid() -> Vec<f64> {
        vec![1.05]
    }
    pub fn iterations_grid() -> Vec<usize> {
        vec![2, 3, 4, 5]
    }
    pub fn detectors() -> Vec<DetectorId> {
        vec![DetectorId::Mmse, DetectorId::Sor, DetectorId::Neumann]
    }
    pub fn trials() -> usize {
        10_000
    }
    pub fn master_seed() -> u64 {
        1
    }
    pub fn min_errors() -> u64 {
        200
    }
}

impl Default for SimConfig {
    /// The 64x8, 64-QAM coded regime with the 0-8 dB grid.
    fn default() -> Self {
        Self {
            n: defaults::n(),
            k: defaults::k(),
            modulation: defaults::modulation(),
            coded: defaults::coded(),
            snr_db_grid: defaults::snr_db_grid(),
            w_grid: defaults::w_grid(),
            iterations_grid: defaults::iterations_grid(),
            detectors: defaults::detectors(),
            trials: defaults::trials(),
            master_seed: defaults::master_seed(),
            min_errors: defaults::min_errors(),
        }
    }
}

impl SimConfig {
    /// Defaults for the relaxation-parameter sweep: fixed 4 dB, i = 3,
    /// a grid bracketing the optimum, MMSE target line included.
    pub fn default_w_sweep() -> Self {
        Self {
            snr_db_grid: vec![4.0],
            w_grid: vec![0.6, 0.8, 0.9, 1.0, 1.05, 1.1, 1.2, 1.4, 1.6],
            iterations_grid: vec![3],
            detectors: vec![DetectorId::Mmse, DetectorId::Sor],
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.n < self.k {
            return Err(SimError::Config(format!(
                "require N >= K >= 1, got N = {}, K = {}",
                self.n, self.k
            )));
        }
        if ![4, 16, 64].contains(&self.modulation) {
            return Err(SimError::Config(format!(
                "modulation order must be 4, 16, or 64, got {}",
                self.modulation
            )));
        }
        if self.trials < 1 {
            return Err(SimError::Config("trials must be at least 1".into()));
        }
        if self.snr_db_grid.is_empty() {
            return Err(SimError::Config("SNR grid is empty".into()));
        }
        if self.w_grid.is_empty() {
            return Err(SimError::Config("w grid is empty".into()));
        }
        if let Some(&w) = self.w_grid.iter().find(|&&w| !(w > 0.0 && w < 2.0)) {
            return Err(SimError::Config(format!(
                "relaxation parameters must lie in (0, 2), got {w}"
            )));
        }
        if self.iterations_grid.is_empty() || self.iterations_grid.contains(&0) {
            return Err(SimError::Config(
                "iteration grid must be non-empty with counts >= 1".into(),
            ));
        }
        if self.detectors.is_empty() {
            return Err(SimError::Config("detector list is empty".into()));
        }
        Ok(())
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.modulation.trailing_zeros() as usize
    }

    /// Bits carried by one K-user channel use.
    pub fn bits_per_use(&self) -> usize {
        self.k * self.bits_per_symbol()
    }

    /// Information bits per frame, rounded up from [`TARGET_INFO_BITS`] so
    /// the transmitted bits (coded bits when coding is on) fill an integer
    /// number of channel uses.
    pub fn frame_info_bits(&self) -> usize {
        let bpu = self.bits_per_use();
        let mut len = TARGET_INFO_BITS;
        loop {
            let tx_bits = if self.coded {
                sorlink::coding::ConvCode::coded_len(len)
            } else {
                len
            };
            if tx_bits % bpu == 0 {
                return len;
            }
            len += 1;
        }
    }
}
