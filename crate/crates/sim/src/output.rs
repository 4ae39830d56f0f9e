//! CSV emission and the JSON reproducibility sidecar.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::experiments::{ComplexityRow, WSweepDiagnostics};
use crate::pipeline::ResultRow;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SimError + '_ {
    move |source| SimError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> SimError + '_ {
    move |e| match e.into_kind() {
        csv::ErrorKind::Io(source) => SimError::Io {
            path: path.display().to_string(),
            source,
        },
        other => SimError::Config(format!("csv serialization failed: {other:?}")),
    }
}

/// Write result rows as CSV: header plus one record per row, fixed column
/// order, RFC-4180 quoting. Deterministic byte-for-byte in the rows.
pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    // serde(skip) on wall_ms keeps headers aligned with serialized fields,
    // but an empty row set would emit no header; write it explicitly.
    w.write_record([
        "detector",
        "n",
        "k",
        "snr_db",
        "w",
        "iterations",
        "frames",
        "bit_errors",
        "ber",
        "mul_count_per_detect",
    ])
    .map_err(csv_err(path))?;
    for row in rows {
        w.write_record([
            row.detector.clone(),
            row.n.to_string(),
            row.k.to_string(),
            fmt_f64(row.snr_db),
            row.w.map(fmt_f64).unwrap_or_default(),
            row.iterations.map(|i| i.to_string()).unwrap_or_default(),
            row.frames.to_string(),
            row.bit_errors.to_string(),
            fmt_f64(row.ber),
            row.mul_count_per_detect
                .map(|c| c.to_string())
                .unwrap_or_default(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

/// f64 Display is shortest-roundtrip and stable across runs and platforms
/// for identical bits, so it is safe for the byte-identical CSV contract.
fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Read rows back (used by tests and downstream consumers).
pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let mut rows = Vec::new();
    for record in r.deserialize::<ResultRow>() {
        rows.push(record.map_err(csv_err(path))?);
    }
    Ok(rows)
}

/// Complexity table CSV.
pub fn emit_complexity_csv(rows: &[ComplexityRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    for row in rows {
        w.serialize(row).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

/// Reproducibility sidecar written next to every result CSV: the resolved
/// configuration and seed (enough to regenerate the CSV byte-identically),
/// plus per-row timings and any experiment diagnostics.
#[derive(Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub experiment: String,
    pub config: SimConfig,
    pub row_wall_ms: Vec<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<WSweepDiagnostics>,
}

/// `<out>.meta.json` for `<out>`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    let mut name = csv_path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    csv_path.with_file_name(name)
}

pub fn emit_sidecar(sidecar: &Sidecar, csv_path: &Path) -> Result<()> {
    let path = sidecar_path(csv_path);
    let body = serde_json::to_string_pretty(sidecar)
        .map_err(|e| SimError::Config(format!("sidecar serialization failed: {e}")))?;
    std::fs::write(&path, body).map_err(io_err(&path))?;
    Ok(())
}
