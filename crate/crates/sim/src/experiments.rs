//! The three experiments: w-sweep, BER-vs-SNR, and the complexity table.

use serde::{Deserialize, Serialize};

use sorlink::comms::{gen_channel, snr_to_sigma2};
use sorlink::detect::{neumann_mul_count, sor_mul_count};
use sorlink::linalg::{
    build_mmse_system, real_expand, sor_iteration_matrix, spectral_radius, split,
};
use sorlink::rng::substream;

use crate::config::{DetectorId, SimConfig};
use crate::error::Result;
use crate::pipeline::{run_point, PointSpec, ResultRow, RHO_DIAGNOSTIC};

/// Rows plus the non-CSV extras that go to the sidecar.
#[derive(Debug)]
pub struct ExperimentOutput {
    pub rows: Vec<ResultRow>,
    pub diagnostics: Option<WSweepDiagnostics>,
}

/// Convergence-rate diagnostic attached to the w-sweep: the spectral radius
/// of the iteration matrix, averaged over fresh channel draws, per w.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WSweepDiagnostics {
    pub snr_db: f64,
    pub channel_draws: usize,
    /// `(w, mean rho(C(w)))` pairs in grid order.
    pub rho_mean: Vec<(f64, f64)>,
}

/// BER against the relaxation parameter at fixed SNR (first grid entry) and
/// fixed iteration count (first grid entry). An MMSE row is emitted first
/// when configured, as the target line.
pub fn experiment_w_sweep(cfg: &SimConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let snr_db = cfg.snr_db_grid[0];
    let iterations = cfg.iterations_grid[0];

    let mut rows = Vec::new();
    if cfg.detectors.contains(&DetectorId::Mmse) {
        rows.push(run_point(
            cfg,
            &PointSpec {
                detector: DetectorId::Mmse,
                snr_db,
                w: None,
                iterations: None,
            },
        )?);
    }
    for &w in &cfg.w_grid {
        rows.push(run_point(
            cfg,
            &PointSpec {
                detector: DetectorId::Sor,
                snr_db,
                w: Some(w),
                iterations: Some(iterations),
            },
        )?);
    }

    let diagnostics = Some(rho_diagnostic(cfg, snr_db, 25)?);
    Ok(ExperimentOutput { rows, diagnostics })
}

/// Mean spectral radius of `C(w)` over fresh channel draws at the given
/// SNR, for every w in the grid.
fn rho_diagnostic(cfg: &SimConfig, snr_db: f64, draws: usize) -> Result<WSweepDiagnostics> {
    let sigma2 = snr_to_sigma2(snr_db, cfg.k);
    let mut rho_mean = vec![0.0f64; cfg.w_grid.len()];
    for draw in 0..draws {
        let mut rng = substream(cfg.master_seed, RHO_DIAGNOSTIC, draw as u64, 0);
        let hc = gen_channel::<f64, _>(cfg.n, cfg.k, &mut rng);
        let yc = vec![num_complex::Complex::new(0.0, 0.0); cfg.n];
        let (h, y) = real_expand(&hc, &yc)?;
        let sys = build_mmse_system(h, y, sigma2)?;
        let sp = split(&sys.w)?;
        for (slot, &w) in rho_mean.iter_mut().zip(&cfg.w_grid) {
            let c = sor_iteration_matrix(&sp, w)?;
            *slot += spectral_radius(&c, 1e-6, 2000)?.rho;
        }
    }
    for slot in rho_mean.iter_mut() {
        *slot /= draws as f64;
    }
    Ok(WSweepDiagnostics {
        snr_db,
        channel_draws: draws,
        rho_mean: cfg.w_grid.iter().copied().zip(rho_mean).collect(),
    })
}

/// BER curves over the SNR grid for every configured detector and iteration
/// count (iterative detectors use the first w in the grid for SOR).
pub fn experiment_ber_vs_snr(cfg: &SimConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let w = cfg.w_grid[0];
    let mut rows = Vec::new();
    for &detector in &cfg.detectors {
        match detector {
            DetectorId::Mmse => {
                for &snr_db in &cfg.snr_db_grid {
                    rows.push(run_point(
                        cfg,
                        &PointSpec {
                            detector,
                            snr_db,
                            w: None,
                            iterations: None,
                        },
                    )?);
                }
            }
            _ => {
                for &iterations in &cfg.iterations_grid {
                    for &snr_db in &cfg.snr_db_grid {
                        let w_col = match detector {
                            DetectorId::Sor => Some(w),
                            DetectorId::Gs => Some(1.0),
                            _ => None,
                        };
                        rows.push(run_point(
                            cfg,
                            &PointSpec {
                                detector,
                                snr_db,
                                w: w_col,
                                iterations: Some(iterations),
                            },
                        )?);
                    }
                }
            }
        }
    }
    Ok(ExperimentOutput {
        rows,
        diagnostics: None,
    })
}

/// One line of the closed-form complexity table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexityRow {
    pub k: usize,
    pub iterations: usize,
    pub neumann_muls: u64,
    pub sor_muls: u64,
}

/// Side-by-side multiplication counts for the tabulated iteration range.
pub fn experiment_complexity(ks: &[usize], iterations: &[usize]) -> Result<Vec<ComplexityRow>> {
    let mut rows = Vec::new();
    for &k in ks {
        for &i in iterations {
            rows.push(ComplexityRow {
                k,
                iterations: i,
                neumann_muls: neumann_mul_count(k, i)?,
                sor_muls: sor_mul_count(k, i),
            });
        }
    }
    Ok(rows)
}

/// Plain-text rendering of the complexity table.
pub fn format_complexity_table(rows: &[ComplexityRow]) -> String {
    let mut out = String::from("   K   i   Neumann-series muls            SOR muls\n");
    for r in rows {
        out.push_str(&format!(
            "{:>4} {:>3} {:>21} {:>19}\n",
            r.k, r.iterations, r.neumann_muls, r.sor_muls
        ));
    }
    out
}
