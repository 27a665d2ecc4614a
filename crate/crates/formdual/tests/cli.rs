//! End-to-end CLI checks beyond the determinism criterion: suite listing,
//! the per-mode config surface, report formats, and usage errors.

use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_formdual")
}

fn temp_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("formdual-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn list_suites_text_and_json() {
    let out = Command::new(bin()).arg("list-suites").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 6, "expected at least 6 suites, got:\n{text}");
    assert!(text.contains("algebra"));
    assert!(text.contains("reciprocity"));

    let out = Command::new(bin())
        .args(["list-suites", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = parsed.as_array().unwrap();
    assert!(entries.len() >= 6);
    assert!(entries.iter().all(|e| e["name"].is_string()));

    // Stable ordering across invocations.
    let again = Command::new(bin()).arg("list-suites").output().unwrap();
    assert_eq!(text, String::from_utf8(again.stdout).unwrap());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = Command::new(bin())
        .args(["list-suites", "--definitely-not-a-flag"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_all_modes_end_to_end() {
    let dir = temp_dir("modes");
    let config = r#"{
  "schema_version": 1,
  "seed": 7,
  "cases": [
    { "mode": "reproduce", "name": "interior-n3", "dimension": 3,
      "field": { "family": "harmonic_form", "degree": 1, "index": 1 },
      "surface": { "shape": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "order": 32 },
      "side": "interior",
      "points": [[0.3, 0.1, -0.2], [-0.2, 0.4, 0.1]],
      "tolerance": 1e-6 },
    { "mode": "reproduce", "name": "exterior-n3", "dimension": 3,
      "field": { "family": "kernel_gradient", "center": [0.0, 0.0, 0.0] },
      "surface": { "shape": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "order": 32 },
      "side": "exterior",
      "points": [[2.0, 1.0, 0.0]],
      "tolerance": 1e-6 },
    { "mode": "pair1", "name": "pairing-one", "dimension": 3,
      "field": { "family": "harmonic_form", "degree": 1, "index": 0 },
      "pair": { "center": [0.3, 0.2, 0.1], "xi_entries": [1], "xi_coeff": 1.0 },
      "surface": { "shape": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "order": 48 },
      "surface_b": { "shape": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.4, "order": 48 },
      "tolerance": 1e-6 },
    { "mode": "pair2", "name": "pairing-two", "dimension": 3,
      "pair": { "center": [2.0, 1.0, 0.5], "xi_entries": [1], "xi_coeff": 1.0 },
      "field": { "family": "exterior_harmonic", "degree": 1, "index": 0 },
      "surface": { "shape": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "order": 48 },
      "tolerance": 1e-6 },
    { "mode": "decompose", "name": "decompose-dipole", "dimension": 3,
      "field": { "family": "exterior_harmonic", "degree": 1, "index": 1 },
      "surface": { "shape": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "order": 32 },
      "points": [[2.0, 0.5, 0.0], [-1.5, 1.0, 1.0]],
      "tolerance": 1e-5 },
    { "mode": "periods", "name": "period-identity",
      "pair": { "center": [0.2, -0.1, 0.3], "xi_entries": [1], "xi_coeff": 1.0 },
      "cycle": { "center": [0.0, 0.0, 0.5], "radius": 2.5, "axis": [0.0, 0.0, 1.0], "order": 256 },
      "surface": { "shape": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "order": 48 },
      "tolerance": 1e-7 },
    { "mode": "identities", "name": "quick-suites", "suites": ["algebra", "reciprocity"] }
  ]
}"#;
    let config_path = dir.join("modes.json");
    std::fs::write(&config_path, config).unwrap();

    let out_path = dir.join("report.json");
    let out = Command::new(bin())
        .args([
            "run",
            config_path.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(report["summary"]["total"], 7);
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["seed"], 7);
    // Cases keep config order.
    assert_eq!(report["cases"][0]["name"], "interior-n3");
    assert_eq!(report["cases"][6]["name"], "quick-suites");

    // CSV flat table.
    let csv_path = dir.join("report.csv");
    let out = Command::new(bin())
        .args([
            "run",
            config_path.to_str().unwrap(),
            "--format",
            "csv",
            "--out",
            csv_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("name,mode,status,"));
    assert_eq!(csv.lines().count(), 8);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = temp_dir("unknown-keys");
    let config = r#"{
  "schema_version": 1,
  "frobnicate": true,
  "cases": []
}"#;
    let path = dir.join("bad-keys.json");
    std::fs::write(&path, config).unwrap();
    let out = Command::new(bin())
        .args(["run", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_config_file_is_a_config_error() {
    let out = Command::new(bin())
        .args(["run", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_changes_are_reflected_in_the_report() {
    let dir = temp_dir("seed");
    let config = r#"{
  "schema_version": 1,
  "seed": 1,
  "cases": [ { "mode": "identities", "name": "ops", "suites": ["operators"] } ]
}"#;
    let path = dir.join("seeded.json");
    std::fs::write(&path, config).unwrap();

    let run = |seed: &str| -> serde_json::Value {
        let out = Command::new(bin())
            .args(["run", path.to_str().unwrap(), "--seed", seed])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let a = run("5");
    let b = run("5");
    let c = run("9");
    assert_eq!(a, b);
    assert_eq!(a["seed"], 5);
    assert_eq!(c["seed"], 9);
    std::fs::remove_dir_all(&dir).ok();
}
