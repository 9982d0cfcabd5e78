//! Integration checks for the CLI surface: artifact layout, config echo,
//! failure marker lifecycle, input validation, and rerun stability.

use clap::Parser;
use qfm_cli::cli::Cli;
use qfm_cli::runner::{OpContext, FAILURE_MARKER};
use serde_json::Value;
use std::fs;
use std::path::Path;

fn dispatch(args: &[&str]) -> anyhow::Result<qfm_cli::runner::RunOutcome> {
    qfm_cli::dispatch(&Cli::try_parse_from(args).unwrap())
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn spectrum_run_writes_echo_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let outcome = dispatch(&[
        "qfm",
        "spectrum",
        "--ansatz",
        "hea",
        "--qubits",
        "3",
        "--layers",
        "2",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    assert!(outcome.success());

    let config = read_json(&out.join("config.json"));
    assert_eq!(config["subcommand"], "spectrum");
    assert_eq!(config["ansatz"], "hea");
    assert_eq!(config["qubits"], 3);

    let report = read_json(&out.join("spectrum.json"));
    assert_eq!(report["max_frequency"], 6);
    assert_eq!(report["pairs_per_axis"], 4096);

    let manifest = read_json(&out.join("manifest.json"));
    let artifacts: Vec<&str> = manifest["artifacts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(artifacts.contains(&"config.json"));
    assert!(artifacts.contains(&"spectrum.json"));
    assert!(artifacts.contains(&"redundancy.csv"));
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);

    let redundancy = fs::read_to_string(out.join("redundancy.csv")).unwrap();
    assert!(redundancy.starts_with("omega,redundancy\r\n"));
}

#[test]
fn failure_marker_is_written_and_cleared() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let ctx = OpContext::start(&out, &serde_json::json!({"subcommand": "test"})).unwrap();
    let outcome = ctx
        .finish(&[0], vec!["cell a: boom".into(), "cell b: boom".into()])
        .unwrap();
    assert!(!outcome.success());
    let marker = fs::read_to_string(out.join(FAILURE_MARKER)).unwrap();
    assert_eq!(marker, "cell a: boom\ncell b: boom\n");

    // a fresh run over the same directory clears the stale marker
    let ctx = OpContext::start(&out, &serde_json::json!({"subcommand": "test"})).unwrap();
    assert!(!out.join(FAILURE_MARKER).exists());
    let outcome = ctx.finish(&[0], Vec::new()).unwrap();
    assert!(outcome.success());
    assert!(!out.join(FAILURE_MARKER).exists());
}

#[test]
fn invalid_configurations_are_rejected_before_compute() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out_str = out.to_str().unwrap();

    // entanglement needs at least two qubits
    let err = dispatch(&[
        "qfm", "entanglement", "--qubits", "1", "--out", out_str,
    ])
    .unwrap_err();
    assert!(err.to_string().contains("two qubits"), "{err}");

    // training targets are single-feature
    let err = dispatch(&[
        "qfm", "train", "--qubits", "2", "--encoding", "xy", "--out", out_str,
    ])
    .unwrap_err();
    assert!(err.to_string().contains("one-dimensional"), "{err}");

    // encoding length must match the declared feature count
    let err = dispatch(&[
        "qfm", "coeffs", "--encoding", "xy", "--features", "3", "--out", out_str,
    ])
    .unwrap_err();
    assert!(err.to_string().contains("features"), "{err}");

    // probabilities above 1 are rejected for Kraus channels
    let err = dispatch(&[
        "qfm", "coeffs", "--noise", "dp", "--levels", "1.5", "--out", out_str,
    ])
    .unwrap_err();
    assert!(err.to_string().contains("1.5"), "{err}");

    // nothing was created by rejected runs
    assert!(!out.exists());
}

#[test]
fn plot_data_demands_run_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let err = dispatch(&[
        "qfm",
        "plot-data",
        "--out",
        dir.path().to_str().unwrap(),
    ])
    .unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("coefficients.csv"), "{msg}");
    assert!(msg.contains("training.csv"), "{msg}");
}

#[test]
fn reruns_reproduce_artifacts_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &Path| {
        vec![
            "qfm".to_string(),
            "coeffs".into(),
            "--qubits".into(),
            "2".into(),
            "--seeds".into(),
            "0,1".into(),
            "--samples".into(),
            "4".into(),
            "--noise".into(),
            "dp".into(),
            "--levels".into(),
            "0,0.02".into(),
            "--out".into(),
            out.to_string_lossy().into_owned(),
        ]
    };
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let argv = args(out);
        let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert!(dispatch(&refs).unwrap().success());
    }
    let a = fs::read(out_a.join("coefficients.csv")).unwrap();
    let b = fs::read(out_b.join("coefficients.csv")).unwrap();
    assert_eq!(a, b);
    // config echo is also identical, so the manifest hash matches
    let ma = read_json(&out_a.join("manifest.json"));
    let mb = read_json(&out_b.join("manifest.json"));
    assert_eq!(ma["config_hash"], mb["config_hash"]);
}

#[test]
fn plot_data_pipeline_covers_a_real_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out_str = out.to_str().unwrap().to_string();
    for argv in [
        vec!["qfm", "spectrum", "--qubits", "2", "--out", &out_str],
        vec![
            "qfm", "coeffs", "--qubits", "2", "--seeds", "0,1", "--samples", "4", "--noise",
            "dp", "--levels", "0,0.03", "--out", &out_str,
        ],
        vec![
            "qfm", "train", "--qubits", "2", "--seeds", "0", "--steps", "4", "--noise", "dp",
            "--levels", "0,0.03", "--out", &out_str,
        ],
        vec!["qfm", "plot-data", "--out", &out_str],
    ] {
        assert!(dispatch(&argv).unwrap().success(), "failed: {argv:?}");
    }
    let plots = out.join("plots");
    for name in [
        "fig02_redundancy.csv",
        "fig04_noiseless_coefficients.csv",
        "fig06_coefficient_means.csv",
        "fig08_spectrum_occupancy.csv",
        "fig09_training_mse.csv",
        "fig10_coefficient_gaps.csv",
        "manifest.json",
    ] {
        assert!(plots.join(name).exists(), "missing {name}");
    }
    // aggregates carry the expected group counts: 2 seeds per arm
    let body = fs::read_to_string(plots.join("fig06_coefficient_means.csv")).unwrap();
    for line in body.lines().skip(1).filter(|l| !l.is_empty()) {
        assert!(line.ends_with(",2"), "unexpected n_seeds in {line}");
    }
}
