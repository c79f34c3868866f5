use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altafini"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data"))
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_reports_balance_and_provenance() {
    let d = json(&run(&["analyze", "--graph", "odd_graph.json"]));
    assert_eq!(d["graph"]["balance"]["kind"], "balanced");
    assert_eq!(d["graph"]["balance"]["clustering"], serde_json::json!([1, -1, 1]));
    assert_eq!(d["graph"]["strongly_connected"], true);
    assert_eq!(d["tool"]["name"], "altafini-cli");
    assert_eq!(d["inputs"]["files"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(d["inputs"]["seed"], 0);
}

#[test]
fn lift_splits_balanced_graph_into_two_classes() {
    let d = json(&run(&["lift", "--matrix", "odd.csv"]));
    assert_eq!(d["structure"]["result"]["kind"], "two_components");
    assert_eq!(d["structure"]["result"]["first"], serde_json::json!([1, 3, 5]));
    assert_eq!(d["n"], 3);
}

#[test]
fn full_alternating_run_goes_to_zero() {
    let d = json(&run(&["full", "--signal", "alternating.json", "--steps", "200"]));
    assert_eq!(d["classification"]["result"]["prediction"]["kind"], "zero_consensus");
    assert_eq!(d["simulation"]["verdict"]["kind"], "zero_consensus");
    let checks = d["cross_checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true), "{checks:?}");
    let rho = d["simulation"]["empirical_rate"]["result"]["rho"].as_f64().unwrap();
    assert!(rho < 0.999);
}

#[test]
fn full_balanced_run_reaches_modulus_consensus() {
    let d = json(&run(&["full", "--signal", "balanced.json"]));
    assert_eq!(d["simulation"]["verdict"]["kind"], "nonzero_modulus_consensus");
    assert_eq!(d["simulation"]["verdict"]["b"], serde_json::json!([1, -1, 1]));
    assert!(d["cross_checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn skipped_stages_carry_reasons() {
    let d = json(&run(&["full", "--signal", "identity.json", "--steps", "50"]));
    assert!(d["rate"]["result"].is_null());
    assert!(d["rate"]["reason"].as_str().unwrap().contains("irreducible"));
    assert!(d["classification"]["result"].is_null());
    assert!(d["classification"]["reason"].is_string());
}

#[test]
fn classify_checks_prediction_against_simulation() {
    let d = json(&run(&["classify", "--signal", "alternating.json", "--simulate"]));
    assert_eq!(d["classification"]["balance"]["kind"], "repeatedly_jointly_unbalanced");
    assert_eq!(d["simulation"]["result"]["agrees"], true);
}

#[test]
fn spectrum_json_and_csv_agree() {
    let d = json(&run(&["spectrum", "--matrix", "rooted_mixed.csv"]));
    assert_eq!(d["spectrum"]["verdict"], "all_inside_unit_disk");
    let radius = d["spectrum"]["spectral_radius"].as_f64().unwrap();
    assert!((radius - 0.5f64.sqrt()).abs() < 1e-12);

    let out = run(&["--format", "csv", "spectrum", "--matrix", "rooted_mixed.csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,modulus"));
    let moduli: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    let reported: Vec<f64> = d["spectrum"]["eigenvalue_magnitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(moduli, reported);
}

#[test]
fn simulate_outputs_round_trip_into_rate() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let spread = dir.path().join("spread.csv");
    let report = dir.path().join("report.json");
    let d = json(&run(&[
        "simulate",
        "--signal",
        "balanced.json",
        "--steps",
        "40",
        "--out-trajectory",
        traj.to_str().unwrap(),
        "--out-spread",
        spread.to_str().unwrap(),
        "--out-report",
        report.to_str().unwrap(),
    ]));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(saved, d);

    let rows = std::fs::read_to_string(&traj).unwrap();
    assert_eq!(rows.lines().count(), 41);
    assert!(std::fs::read_to_string(&spread).unwrap().starts_with("t,modulus_spread"));

    let final_csv: Vec<f64> =
        rows.lines().last().unwrap().split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    let final_json: Vec<f64> = d["simulation"]["final_state"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(final_csv, final_json);

    let r = json(&run(&["rate", "--signal", "balanced.json", "--trajectory", traj.to_str().unwrap()]));
    let slack = r["comparison"]["result"]["slack"].as_f64().unwrap();
    assert!(slack >= 0.0);
}

#[test]
fn explicit_initial_state_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let x0 = dir.path().join("x0.json");
    std::fs::write(&x0, "[1, 1, 1]").unwrap();
    let d = json(&run(&["simulate", "--signal", "alternating.json", "--x0", x0.to_str().unwrap(), "--steps", "3"]));
    assert_eq!(d["simulation"]["x1"], serde_json::json!([1.0, 1.0, 1.0]));
    // x(3) = A(2) A(1) (1, 1, 1)
    assert_eq!(d["simulation"]["final_state"], serde_json::json!([0.5, 0.5, 0.0]));
}

#[test]
fn runs_are_deterministic_for_a_seed() {
    let a = run(&["--seed", "42", "full", "--signal", "balanced.json"]);
    let b = run(&["--seed", "42", "full", "--signal", "balanced.json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--seed", "43", "full", "--signal", "balanced.json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("analyze.json");
    let out = run(&["--out", path.to_str().unwrap(), "analyze", "--matrix", "even.csv"]);
    assert!(out.status.success());
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d["graph"]["balance"]["clustering"], serde_json::json!([1, 1, -1]));
}

#[test]
fn malformed_input_exits_2_with_location() {
    let out = run(&["analyze", "--graph", "malformed.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["spectrum", "--matrix", "does_not_exist.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does_not_exist.csv"));
}

#[test]
fn undecidable_signal_exits_3() {
    let out = run(&["classify", "--signal", "aperiodic.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn disconnected_window_exits_2_naming_the_window() {
    let out = run(&["classify", "--signal", "not_sc.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("t=1"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--graph", "a.json", "--matrix", "b.csv"]).status.code(), Some(2));
}

#[test]
fn invalid_matrix_exits_2() {
    let out = run(&["spectrum", "--matrix", &data("ones.csv").display().to_string()]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn single_vertex_graph_is_balanced() {
    let d = json(&run(&["analyze", "--graph", "single.json"]));
    assert_eq!(d["graph"]["balance"]["clustering"], serde_json::json!([1]));
}
