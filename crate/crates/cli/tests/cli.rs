use std::path::PathBuf;

use opreduce::format::ReduceOutput;
use opreduce::{run_cli_with, EXIT_INPUT, EXIT_OK, EXIT_VERIFY_FAILED};
use opreduce_core::canonical::{Orientation, RankOneSpec};
use opreduce_core::reduction::{partial_reduce_jordan, total_reduce_rank_one};
use tempfile::TempDir;

const WORKED: &str = r#"{
  "n": 2,
  "matrix": {"kind": "hat", "b": ["1", "1"]},
  "forcing": [[{"poly": ["0", "-1"], "rate": "0"}], [{"poly": ["-1", "-1"]}]],
  "t0": "0",
  "c": ["0", "1"],
  "horizon": "1",
  "step": "1/100"
}"#;

const CUBIC: &str = r#"{
  "n": 3,
  "matrix": {"kind": "hat", "b": ["1", "2", "3"]},
  "forcing": [[{"poly": ["0", "1"]}], [{"poly": ["0", "0", "1"]}], [{"poly": ["1"]}]],
  "t0": "0",
  "c": ["1", "0", "-1"],
  "horizon": "1",
  "step": "1/100"
}"#;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["opreduce"];
    full.extend_from_slice(args);
    let code = run_cli_with(full, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn with_file(text: &str, args: &[&str]) -> Run {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "problem.json", text);
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--input", path.to_str().unwrap()]);
    run(&all)
}

#[test]
fn reduce_prints_worked_example() {
    let r = with_file(WORKED, &["reduce"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(
        r.out.lines().next(),
        Some("(A^2 - 2A) x1 = A(phi1) + phi2 - phi1")
    );
    assert_eq!(r.out.lines().count(), 2);
}

#[test]
fn reduce_json_round_trips() {
    let r = with_file(CUBIC, &["reduce", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let parsed = ReduceOutput::parse(&r.out).unwrap();
    let spec = RankOneSpec::from_ints(&[1, 2, 3], Orientation::Hat).unwrap();
    assert_eq!(
        parsed.reduced_equations().unwrap(),
        total_reduce_rank_one(&spec)
    );
}

#[test]
fn reduce_partial_modes() {
    let r = with_file(CUBIC, &["reduce", "--mode", "jordan", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let parsed = ReduceOutput::parse(&r.out).unwrap();
    let spec = RankOneSpec::from_ints(&[1, 2, 3], Orientation::Hat).unwrap();
    assert_eq!(
        parsed.to_equations().unwrap(),
        partial_reduce_jordan(&spec).unwrap().equations
    );
    assert!(parsed.basis.is_some());

    let r = with_file(CUBIC, &["reduce", "--mode", "rational"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(
        r.out.lines().any(|l| l.starts_with("(A^2 - 6A) z2 = ")),
        "{}",
        r.out
    );

    let degenerate = r#"{"n": 2, "matrix": {"kind": "check", "b": ["1", "-1"]}}"#;
    let r = with_file(degenerate, &["reduce", "--mode", "jordan"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("sum of coefficients is zero"), "{}", r.err);
    assert_eq!(
        with_file(degenerate, &["reduce", "--mode", "rational"]).code,
        EXIT_OK
    );
}

#[test]
fn reduce_dense_uses_adjugate() {
    let dense = r#"{"n": 2, "matrix": {"kind": "dense", "entries": [["1", "1"], ["1", "1"]]}}"#;
    let r = with_file(dense, &["reduce"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(
        r.out.lines().next(),
        Some("(A^2 - 2A) x1 = A(phi1) + phi2 - phi1")
    );
    assert_eq!(
        with_file(dense, &["reduce", "--mode", "rational"]).code,
        EXIT_INPUT
    );
}

#[test]
fn solve_csv() {
    let r = with_file(CUBIC, &["solve"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(
        lines[0],
        "t,x1_coupled,x1_decoupled,x2_coupled,x2_decoupled,x3_coupled,x3_decoupled"
    );
    assert_eq!(lines.len(), 1 + 101 + 1);
    assert!(lines[1].starts_with("0,1,1,0,0,-1,-1"), "{}", lines[1]);
    let dev: f64 = lines
        .last()
        .unwrap()
        .strip_prefix("# max_abs_deviation=")
        .unwrap()
        .parse()
        .unwrap();
    assert!(dev > 0.0 && dev <= 1e-6);
}

#[test]
fn solve_tolerance_controls_exit_code() {
    assert_eq!(
        with_file(CUBIC, &["solve", "--tol", "0"]).code,
        EXIT_VERIFY_FAILED
    );
    assert_eq!(with_file(CUBIC, &["solve", "--tol", "1e-3"]).code, EXIT_OK);
    assert_eq!(with_file(CUBIC, &["solve", "--tol", "-1"]).code, EXIT_INPUT);
}

#[test]
fn solve_json() {
    let r = with_file(WORKED, &["solve", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["t"].as_array().unwrap().len(), 101);
    assert_eq!(v["within_tol"], serde_json::Value::Bool(true));
    let last = &v["decoupled"][100];
    assert!((last[0].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn solve_rejects_bad_inputs() {
    let empty = WORKED.replace("\"horizon\": \"1\"", "\"horizon\": \"0\"");
    let r = with_file(&empty, &["solve"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("horizon"), "{}", r.err);

    let broken = WORKED.replace("\"c\": [\"0\", \"1\"],", "\"c\": [\"0\", \"1\"");
    let r = with_file(&broken, &["solve"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("line 7"), "{}", r.err);

    let bad_rational = WORKED.replace("\"1/100\"", "\"0.01\"");
    let r = with_file(&bad_rational, &["solve"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("line 8"), "{}", r.err);

    let r = with_file(
        r#"{"n": 2, "matrix": {"kind": "hat", "b": ["1", "1"]}}"#,
        &["solve"],
    );
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("missing field"), "{}", r.err);

    let r = run(&["solve", "--input", "/nonexistent/problem.json"]);
    assert_eq!(r.code, EXIT_INPUT);
}

#[test]
fn verify_reports_pass_count() {
    let r = run(&["verify", "--trials", "100", "--seed", "42"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    assert_eq!(r.out.trim(), "passed 100/100 trials (seed 42)");
    assert_eq!(
        run(&["verify", "--trials", "100", "--seed", "42"]).out,
        r.out
    );
}

#[test]
fn argument_errors() {
    assert_eq!(run(&[]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(run(&["verify", "--trials", "many"]).code, EXIT_INPUT);
    assert_eq!(
        run(&["solve", "--input", "x", "--format", "xml"]).code,
        EXIT_INPUT
    );
    let help = run(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.out.contains("reduce"));
}
