//! End-to-end tests of the `lhring` binary: file output, determinism,
//! config precedence, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lhring"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn temp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lhring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn spectrum_writes_deterministic_file() {
    let dir = temp_dir();
    let out_a = dir.join("spectrum_a.csv");
    let out_b = dir.join("spectrum_b.csv");
    for out in [&out_a, &out_b] {
        let output = run(&["spectrum", "--out", out.to_str().unwrap()]);
        assert!(output.status.success());
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "repeated runs must be byte-identical");

    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("kind,label,energy_cm1\n"));
    assert!(text.contains("gap,adjacent_lattice_levels,422.000000"));
}

#[test]
fn entangle_stdout_has_twelve_rows() {
    let output = run(&["entangle"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert_eq!(text.lines().count(), 13); // header + 4 modes x 3 splits
    assert!(text.contains("\"0.750000000, 0.250000000\""));
}

#[test]
fn entangle_accepts_negative_mode() {
    let output = run(&["entangle", "--l", "-1"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn jc_json_output_parses() {
    let output = run(&[
        "jc", "--format", "json", "--n-max", "6", "--t-steps", "16",
    ]);
    assert!(output.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(parsed["dressed"].as_array().unwrap().len(), 10); // 2 x (n_max - 1)
    assert_eq!(parsed["series"].as_array().unwrap().len(), 16);
}

#[test]
fn verify_exits_zero_and_reports_every_suite() {
    let dir = temp_dir();
    let out = dir.join("verify.json");
    let output = run(&["verify", "--n-max", "16", "--out", out.to_str().unwrap()]);
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert!(report["passed"].as_bool().unwrap());
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 19);
    for suite in suites {
        assert!(
            suite["passed"].as_bool().unwrap(),
            "suite {} failed",
            suite["name"]
        );
        assert!(suite["measured"].is_number());
        assert!(suite["tolerance"].is_number());
    }
}

#[test]
fn validation_errors_exit_one() {
    // Mode outside the admissible window.
    let output = run(&["entangle", "--l", "5"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("outside admissible window"));

    // Odd lattice size.
    let output = run(&["spectrum", "--two-n", "5"]);
    assert_eq!(output.status.code(), Some(1));

    // Negative coupling.
    let output = run(&["jc", "--g", "-1"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("coupling g must be >= 0"));

    // Malformed flags are validation errors too.
    let output = run(&["spectrum", "--does-not-exist"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn numerical_failures_exit_two() {
    // photon_n + 1 lands on the top Fock level: truncation leak.
    let output = run(&["jc", "--n-max", "2", "--photon-n", "1"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("truncation leak"));
}

#[test]
fn io_failures_exit_three() {
    let output = run(&["spectrum", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("/nonexistent-dir/x.csv"));
}

#[test]
fn config_file_is_used_and_flags_override() {
    let dir = temp_dir();
    let config = dir.join("ring.toml");
    std::fs::write(&config, "e0 = 100.0\nv0 = 0.0\n").unwrap();

    // From the file: flat band at e0 = 100.
    let output = run(&["spectrum", "--config", config.to_str().unwrap()]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("exciton,n=0,100.000000"));
    assert!(text.contains("exciton,n=8,100.000000"));

    // Flag wins over the file.
    let output = run(&[
        "spectrum",
        "--config",
        config.to_str().unwrap(),
        "--e0",
        "50",
    ]);
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("exciton,n=0,50.0000000"));

    // Unknown keys are rejected as validation errors.
    std::fs::write(&config, "nonsense = 1\n").unwrap();
    let output = run(&["spectrum", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
}
