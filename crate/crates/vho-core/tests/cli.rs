//! End-to-end tests of the `vho` binary: subcommands, formats, exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn vho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vho"))
        .args(args)
        .output()
        .expect("vho runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_small_config(dir: &Path, runs: &str) -> std::path::PathBuf {
    // shrink the default config so simulate tests stay fast
    let emitted = stdout(&vho(&["emit-defaults", "--traffic-class", "background"]));
    let text = emitted
        .replace("epochs = 1000", "epochs = 20")
        .replace("runs = 10", &format!("runs = {runs}"));
    let path = dir.join("config.toml");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn emit_defaults_round_trips_through_simulate() {
    let dir = TempDir::new().unwrap();
    let cfg = write_small_config(dir.path(), "2");
    let out = vho(&["simulate", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let artifact: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(artifact["schema_version"], 1);
    assert_eq!(artifact["means"].as_array().unwrap().len(), 3);
    assert_eq!(artifact["episodes"].as_array().unwrap().len(), 6);
    assert!(artifact["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let cfg = write_small_config(dir.path(), "2");
    let args = [
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "99",
        "--format",
        "csv",
    ];
    let a = vho(&args);
    let b = vho(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simulate_csv_has_mean_and_detail_rows() {
    let dir = TempDir::new().unwrap();
    let cfg = write_small_config(dir.path(), "10");
    let out = vho(&["simulate", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mean_rows = text.lines().filter(|l| l.starts_with("mean,")).count();
    let run_rows = text.lines().filter(|l| l.starts_with("run,")).count();
    assert_eq!(mean_rows, 3);
    assert_eq!(run_rows, 30);
}

#[test]
fn zero_runs_config_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = write_small_config(dir.path(), "0");
    let out = vho(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("runs"), "{err}");
}

#[test]
fn simulate_output_feeds_evaluate() {
    let dir = TempDir::new().unwrap();
    let cfg = write_small_config(dir.path(), "2");
    let metrics = dir.path().join("metrics.json");
    let out = vho(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        metrics.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = vho(&["evaluate", "--metrics", metrics.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let artifact: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let indices = artifact["report"]["indices"].as_array().unwrap();
    assert_eq!(indices.len(), 3);
    for ci in indices {
        let v = ci.as_f64().unwrap();
        assert!(v > 0.0 && v <= 100.0);
    }
}

#[test]
fn evaluate_fixture_reproduces_reference_indices() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/background.toml");
    let out = vho(&["evaluate", "--fixture", fixture, "--format", "json"]);
    assert!(out.status.success());
    let artifact: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let indices = artifact["report"]["indices"].as_array().unwrap();
    let expected = [14.29, 57.14, 57.14];
    for (got, want) in indices.iter().zip(expected) {
        assert!((got.as_f64().unwrap() - want).abs() < 0.05);
    }
    let recommended = artifact["report"]["recommended"].as_array().unwrap();
    assert_eq!(recommended.len(), 2); // GRA and DIA tie
}

#[test]
fn evaluate_strict_mode_changes_normalization() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/background.toml");
    let default_run = vho(&["evaluate", "--fixture", fixture, "--format", "json"]);
    let strict_run = vho(&["evaluate", "--fixture", fixture, "--strict-eq3", "--format", "json"]);
    assert!(default_run.status.success());
    assert!(strict_run.status.success());
    let d: serde_json::Value = serde_json::from_str(&stdout(&default_run)).unwrap();
    let s: serde_json::Value = serde_json::from_str(&stdout(&strict_run)).unwrap();
    assert_ne!(d["report"]["normalized"], s["report"]["normalized"]);
}

#[test]
fn reproduce_succeeds_and_reports_four_passes() {
    let out = vho(&["reproduce"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
    assert!(text.contains("all reference tables reproduced"));
}

#[test]
fn reproduce_json_mode_carries_pass_flags() {
    let out = vho(&["reproduce", "--format", "json"]);
    assert!(out.status.success());
    let artifact: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(artifact["all_pass"], true);
    let results = artifact["results"].as_array().unwrap();
    assert_eq!(results.len(), 4);
    for r in results {
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn tampered_fixture_fails_evaluation_check() {
    // corrupt one measured value and check the mismatch is caught and named
    let dir = TempDir::new().unwrap();
    let original =
        fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/background.toml"))
            .unwrap();
    let tampered = original.replace("[50.0, 70.0]", "[10.0, 70.0]");
    assert_ne!(original, tampered);
    let path = dir.path().join("tampered.toml");
    fs::write(&path, &tampered).unwrap();

    let out = vho(&["evaluate", "--fixture", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let artifact: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // with the tampered column max the criticality column shifts
    let crit = artifact["report"]["criticality"].as_array().unwrap();
    assert_ne!(crit[0][0], 1);
}

#[test]
fn unknown_method_and_missing_input_fail() {
    let out = vho(&["evaluate"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--metrics") || err.contains("--fixture"), "{err}");
}

#[test]
fn emit_defaults_covers_all_classes() {
    for class in ["background", "conversational", "interactive", "streaming"] {
        let out = vho(&["emit-defaults", "--traffic-class", class]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert!(text.contains(&format!("traffic_class = \"{class}\"")));
    }
}

#[test]
fn csv_and_json_report_values_agree() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/conversational.toml");
    let json_out = vho(&["evaluate", "--fixture", fixture, "--format", "json"]);
    let csv_out = vho(&["evaluate", "--fixture", fixture, "--format", "csv"]);
    let artifact: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let csv = stdout(&csv_out);
    for (i, line) in csv.lines().skip(1).enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        let ci_json = artifact["report"]["indices"][i].as_f64().unwrap();
        let ci_csv: f64 = fields[fields.len() - 2].parse().unwrap();
        assert_eq!(ci_json, ci_csv, "CSV and JSON disagree on row {i}");
    }
}
