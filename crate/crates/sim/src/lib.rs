//! Monte Carlo experiment harness for the SOR uplink detector: the w-sweep,
//! BER-vs-SNR curves against the exact-MMSE and Neumann references, and the
//! multiplication-count table, with deterministic seeded runs and CSV
//! output.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod pipeline;

pub use config::{DetectorId, SimConfig};
pub use error::SimError;
pub use experiments::{
    experiment_ber_vs_snr, experiment_complexity, experiment_w_sweep, format_complexity_table,
    ComplexityRow, ExperimentOutput,
};
pub use output::{emit_complexity_csv, emit_csv, emit_sidecar, read_csv, sidecar_path, Sidecar};
pub use pipeline::{run_point, PointSpec, ResultRow};
