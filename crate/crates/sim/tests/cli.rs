//! The command-line surface: flags, config files, exit codes, and output
//! reproducibility through the binary.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sorlink-sim"))
}

#[test]
fn complexity_table_prints_tabulated_values() {
    let out = bin().args(["complexity"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // K = 8, i = 3 row: Neumann 4336, SOR 864.
    let row = text
        .lines()
        .find(|l| l.trim_start().starts_with("8   3"))
        .unwrap();
    assert!(row.contains("4336") && row.contains("864"), "{row}");
    assert!(
        text.contains("95264"),
        "K=16 i=5 Neumann entry missing:\n{text}"
    );
    assert!(text.contains("5440"), "K=16 i=5 SOR entry missing:\n{text}");
}

#[test]
fn complexity_rejects_untabulated_iterations() {
    let out = bin().args(["complexity", "--iters", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn small_ber_args(out_path: &Path, seed: &str) -> Vec<String> {
    [
        "ber",
        "--uncoded",
        "--n",
        "32",
        "--k",
        "4",
        "--snr",
        "2:6:2",
        "--iters",
        "3",
        "--detectors",
        "mmse,sor",
        "--trials",
        "8",
        "--min-errors",
        "0",
        "--seed",
        seed,
        "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([out_path.display().to_string()])
    .collect()
}

#[test]
fn rerun_with_same_seed_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("run1.csv");
    let p2 = dir.path().join("run2.csv");
    assert!(bin()
        .args(small_ber_args(&p1, "99"))
        .status()
        .unwrap()
        .success());
    assert!(bin()
        .args(small_ber_args(&p2, "99"))
        .status()
        .unwrap()
        .success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());

    let p3 = dir.path().join("run3.csv");
    assert!(bin()
        .args(small_ber_args(&p3, "100"))
        .status()
        .unwrap()
        .success());
    assert_ne!(std::fs::read(&p1).unwrap(), std::fs::read(&p3).unwrap());
}

#[test]
fn sidecar_config_reproduces_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("orig.csv");
    assert!(bin()
        .args(small_ber_args(&p1, "123"))
        .status()
        .unwrap()
        .success());

    // Extract the resolved config from the sidecar and rerun from it alone.
    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("orig.csv.meta.json")).unwrap(),
    )
    .unwrap();
    let cfg_path = dir.path().join("replay.json");
    std::fs::write(
        &cfg_path,
        serde_json::to_string(&sidecar["config"]).unwrap(),
    )
    .unwrap();

    let p2 = dir.path().join("replay.csv");
    let status = bin()
        .args([
            "ber",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            p2.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(
        &cfg_path,
        r#"{"n": 32, "k": 4, "coded": false, "snr_db_grid": [4.0], "trials": 4, "min_errors": 0, "detectors": ["mmse"], "iterations_grid": [3]}"#,
    )
    .unwrap();
    let out_path = dir.path().join("out.csv");
    let status = bin()
        .args([
            "ber",
            "--config",
            cfg_path.to_str().unwrap(),
            "--n",
            "64",
            "--k",
            "8",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(
        row.starts_with("mmse,64,8,"),
        "flag override not applied: {row}"
    );
}

#[test]
fn config_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.csv");
    // w outside (0, 2)
    let out = bin()
        .args(["ber", "--w", "2.5", "--out", out_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // N < K
    let out = bin()
        .args([
            "ber",
            "--n",
            "4",
            "--k",
            "8",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Unknown detector name
    let out = bin()
        .args([
            "ber",
            "--detectors",
            "zf",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Clap-level usage error also lands on 2.
    let out = bin().args(["ber"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn w_sweep_writes_csv_and_sidecar_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sweep.csv");
    let status = bin()
        .args([
            "w-sweep",
            "--uncoded",
            "--w",
            "0.9,1.05",
            "--trials",
            "4",
            "--min-errors",
            "0",
            "--seed",
            "5",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        csv.lines().count(),
        1 + 3,
        "mmse target + 2 sweep rows:\n{csv}"
    );
    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("sweep.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(sidecar["experiment"], "w-sweep");
    assert_eq!(
        sidecar["diagnostics"]["rho_mean"].as_array().unwrap().len(),
        2
    );
    assert_eq!(sidecar["config"]["master_seed"], 5);
}
