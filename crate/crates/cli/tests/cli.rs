//! Command-line contract: exit codes, output formats and schema conformance.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veronese")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn assert_schema(name: &str, value: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["verify", "--two-s", "0"]), 2);
    assert_eq!(code(&["verify", "--two-s", "9"]), 2);
    assert_eq!(code(&["verify", "--two-s", "2", "--k", "3"]), 2);
    assert_eq!(code(&["verify", "--two-s", "2", "--suite", "bogus"]), 2);
    assert_eq!(code(&["verify", "--two-s", "2", "--format", "csv"]), 2);
    assert_eq!(code(&["surface", "--two-s", "1", "--k", "0", "--grid", "1"]), 2);
    assert_eq!(code(&["surface", "--two-s", "1", "--k", "0", "--radius", "0"]), 2);
    assert_eq!(code(&["surface", "--two-s", "1", "--k", "all"]), 2);
    assert_eq!(code(&["quadrature", "--two-s", "1", "--k", "0", "--which", "action", "--tol", "0"]), 2);
    assert_eq!(code(&["quadrature", "--two-s", "1", "--which", "volume"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let target = target.to_str().unwrap();
    assert_eq!(code(&["surface", "--two-s", "1", "--k", "0", "--grid", "3", "--out", target]), 3);
}

#[test]
fn non_convergence_exits_4() {
    let out = run(&["quadrature", "--two-s", "1", "--k", "0", "--which", "action", "--tol", "1e-300", "--max-evaluations", "20"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("estimate"));
}

#[test]
fn radius_suite_reports_discrepancy_without_failing() {
    let report = json(&["verify", "--two-s", "1", "--suite", "radius", "--format", "json"]);
    assert_schema("report", &report);
    let checks = report["checks"].as_array().unwrap();
    let flagged: Vec<&Value> = checks.iter().filter(|c| c["status"] == "documented-discrepancy").collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0]["name"], "radius_printed_form");
    assert_eq!(flagged[0]["level"], 1);
    assert!(checks.iter().all(|c| c["status"] != "exact-fail"));
}

#[test]
fn verify_report_for_two_s_2() {
    let report = json(&["verify", "--two-s", "2", "--format", "json"]);
    assert_schema("report", &report);
    assert_eq!(report["two_s"], 2);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "exact-fail"));
    let mut seen = std::collections::HashSet::new();
    for c in checks {
        assert!(seen.insert((c["suite"].to_string(), c["name"].to_string(), c["level"].to_string())), "{c}");
    }
}

#[test]
fn level_filter() {
    let report = json(&["verify", "--two-s", "2", "--k", "1", "--suite", "el,spin", "--format", "json"]);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["level"] == 1 || c["status"] == "skipped", "{c}");
    }
}

#[test]
fn geometry_tables() {
    let t = json(&["table", "--two-s", "1", "--format", "json"]);
    assert_schema("table", &t);
    let rows = t["rows"].as_array().unwrap();
    let col = |name: &str| rows.iter().map(|r| r[name].as_str().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(col("radius_squared"), ["1/4", "1/4"]);
    assert_eq!(col("gauss_curvature"), ["4", "4"]);
    assert_eq!(col("cos_kahler"), ["1", "-1"]);
    assert_eq!(rows[0]["coincides_with"], serde_json::json!([1]));

    let t = json(&["table", "--two-s", "2", "--format", "json"]);
    assert_schema("table", &t);
    let row = &t["rows"][1];
    assert_eq!(row["gauss_curvature"], "1");
    assert_eq!(row["cos_kahler"], "0");
    assert_eq!(row["action_coefficient"], "4");

    let text = String::from_utf8(run(&["table", "--two-s", "3"]).stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn surface_formats() {
    let s = json(&["surface", "--two-s", "2", "--k", "1", "--grid", "4", "--radius", "2", "--format", "json"]);
    assert_schema("surface", &s);
    assert_eq!(s["samples"].as_array().unwrap().len(), 16);
    assert_eq!(s["samples"][0]["coords"].as_array().unwrap().len(), 8);

    let csv = String::from_utf8(run(&["surface", "--two-s", "2", "--k", "1", "--grid", "3"]).stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# two_s=2 k=1 basis=gellmann-v1 radius_sq=1"));
    assert_eq!(lines.next(), Some("xi1,xi2,c_1,c_2,c_3,c_4,c_5,c_6,c_7,c_8,metric_density"));
    assert_eq!(lines.count(), 9);
}

#[test]
fn quadrature_outputs() {
    let q = json(&["quadrature", "--two-s", "1", "--k", "0", "--which", "action", "--format", "json"]);
    assert_schema("quadrature", &q);
    assert!((q[0]["value"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-6);
    let q = json(&["quadrature", "--two-s", "3", "--k", "1", "--which", "gauss-bonnet", "--format", "json"]);
    assert!((q[0]["value"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    let text = String::from_utf8(run(&["quadrature", "--two-s", "2", "--which", "action"]).stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
}
