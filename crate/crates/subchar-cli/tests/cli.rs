//! End-to-end contract tests for the `subchar` binary: argument grammar,
//! output formats, exit codes, and determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn subchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subchar"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

fn basis_size(args: &[&str]) -> u64 {
    let mut full = vec!["describe"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json"]);
    let out = subchar(&full);
    assert_eq!(exit_code(&out), 0, "describe failed: {}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    v["basisSize"].as_u64().expect("basisSize present")
}

#[test]
fn describe_defaults_to_c3_with_full_basis_listing() {
    let out = subchar(&["describe"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("basis size: 22"), "got:\n{text}");
    assert!(text.contains("s[D(1);1]"));
    assert!(text.contains("s[1xC3;chi(0,1,2)]"));
    assert!(text.contains("#21"));
}

#[test]
fn describe_reports_known_basis_sizes() {
    assert_eq!(basis_size(&["--group", "C5", "--pi", "5"]), 56);
    assert_eq!(basis_size(&["--group", "C2", "--pi", ""]), 5);
    assert_eq!(basis_size(&["--group", "C2", "--pi", "2"]), 11);
    assert_eq!(basis_size(&["--group", "C2,C3", "--pi", "2,3"]), 57);
}

#[test]
fn describe_json_lists_products_and_identity() {
    let out = subchar(&["describe", "--group", "C3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["pi"], serde_json::json!([3]));
    assert_eq!(v["identity"], "s[D(1);1]");
    let products = v["products"].as_array().expect("products array");
    assert_eq!(products.len(), 1);
    assert_eq!(products[0]["basisCount"], 22);
    assert_eq!(v["basis"].as_array().expect("basis array").len(), 22);
}

#[test]
fn mult_reproduces_the_worked_product() {
    let out = subchar(&[
        "mult",
        "--group",
        "C3",
        "--pi",
        "3",
        "--ell",
        "id",
        "s[1xC3;chi(0,1,2)]",
        "s[C3x1;chi(0,2,1)]",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3 * s[1x1;1]");
}

#[test]
fn mult_accepts_basis_indices_and_keeps_indeterminates() {
    let out = subchar(&["mult", "--group", "C3", "--pi", "3", "#2", "#6"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "t_3 * s[1x1;1]");
}

#[test]
fn mult_renders_unrelated_products_as_zero() {
    let out = subchar(&["mult", "--group", "C3", "--pi", "3", "#2", "#5"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn mult_rejects_unknown_labels_with_usage_exit() {
    let out = subchar(&["mult", "--group", "C3", "nope", "#0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown basis label"));
}

#[test]
fn check_accepts_the_nilpotent_ideal_example() {
    let out = subchar(&[
        "check", "--group", "C3", "--pi", "3", "--ell", "id", "--suites", "thm-4.7,trace-rank",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("not semisimple"), "got:\n{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_reports_generic_block_dimensions() {
    let out = subchar(&[
        "check", "--group", "C3", "--pi", "3", "--ell", "3=t", "--suites", "thm-1",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("blocks 4,2,1,1"));
}

#[test]
fn check_reports_the_critical_branch() {
    let out = subchar(&["check", "--ell", "3=3", "--suites", "thm-1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("not semisimple"), "got:\n{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_skips_suites_whose_hypotheses_fail() {
    let out = subchar(&["check", "--suites", "thm-4.7"]);
    assert_eq!(exit_code(&out), 0, "skips alone must not fail the run");
    assert!(stdout(&out).contains("SKIP"));

    let out = subchar(&["check", "--group", "S3", "--pi", "3", "--suites", "thm-1"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("SKIP"));
}

#[test]
fn check_failures_exit_one() {
    let out = subchar(&[
        "check", "--group", "C3", "--pi", "3", "--ell", "3=3", "--suites", "lemma-3.1",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn check_rejects_unknown_suites() {
    let out = subchar(&["check", "--suites", "thm-9.9"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown suite"));
    assert!(stderr(&out).contains("goursat"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&subchar(&["describe", "--group", "Q8"])), 2);
    assert_eq!(exit_code(&subchar(&["describe", "--pi", "six"])), 2);
    assert_eq!(exit_code(&subchar(&["describe", "--ell", "3"])), 2);
    assert_eq!(exit_code(&subchar(&["check", "--format", "yaml"])), 2);
}

#[test]
fn check_json_is_deterministic_and_sorted() {
    let args = [
        "check", "--group", "C3", "--pi", "3", "--suites", "thm-1,goursat,prop-2.2", "--format",
        "json", "--jobs", "3",
    ];
    let first = subchar(&args);
    let second = subchar(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "identical runs must emit identical bytes");

    let v: Value = serde_json::from_str(&stdout(&first)).expect("valid json");
    let suites: Vec<&str> = v
        .as_array()
        .expect("array of suite reports")
        .iter()
        .map(|r| r["suite"].as_str().expect("suite name"))
        .collect();
    assert_eq!(suites, vec!["goursat", "prop-2.2", "thm-1"]);
    for report in v.as_array().unwrap() {
        assert_eq!(report["parameters"]["group"], "C3");
        assert_eq!(report["parameters"]["seed"], "0");
        assert!(report["checks"].as_array().is_some_and(|c| !c.is_empty()));
        assert!(
            report["timings"].as_object().is_some_and(|t| t.is_empty()),
            "timings stay empty unless requested"
        );
    }
}

#[test]
fn check_timings_flag_populates_timings() {
    let out = subchar(&[
        "check", "--suites", "goursat", "--format", "json", "--timings",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert!(v[0]["timings"]["millis"].is_u64());
}

#[test]
fn check_csv_has_stable_header() {
    let out = subchar(&["check", "--suites", "thm-1", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("suite,check,status,witness\n"), "got:\n{text}");
    assert!(text.contains("\"semisimple, blocks 4,2,1,1\""));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("report.json");
    let out = subchar(&[
        "check",
        "--suites",
        "thm-1",
        "--format",
        "json",
        "--out",
        path.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).is_empty(), "report goes to the file, not stdout");
    let written = std::fs::read_to_string(&path).expect("report written");
    let v: Value = serde_json::from_str(&written).expect("valid json");
    assert_eq!(v[0]["suite"], "thm-1");
}

#[test]
fn seed_changes_sampled_suites_but_not_their_verdicts() {
    let a = subchar(&[
        "check", "--group", "S3", "--pi", "3", "--suites", "star-assoc", "--seed", "1", "--format",
        "json",
    ]);
    let b = subchar(&[
        "check", "--group", "S3", "--pi", "3", "--suites", "star-assoc", "--seed", "2", "--format",
        "json",
    ]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(exit_code(&b), 0);
    let va: Value = serde_json::from_str(&stdout(&a)).expect("valid json");
    let vb: Value = serde_json::from_str(&stdout(&b)).expect("valid json");
    assert_eq!(va[0]["parameters"]["seed"], "1");
    assert_eq!(vb[0]["parameters"]["seed"], "2");
    for v in [&va, &vb] {
        for check in v[0]["checks"].as_array().expect("checks") {
            assert_eq!(check["status"], "pass");
        }
    }
}
