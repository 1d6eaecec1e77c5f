use std::path::PathBuf;
use std::process::Command;

use cayley::{catalog, format};
use cayley_cli::{run, Outcome, EXIT_ERROR, EXIT_OK, EXIT_VERDICT};
use serde_json::Value;

fn cayley(args: &[&str]) -> Outcome {
    run(std::iter::once("cayley").chain(args.iter().copied()))
}

fn data(args: &[&str]) -> Value {
    let out = cayley(&[&["--format", "data"], args].concat());
    serde_json::from_str(&out.stdout).expect("JSON report")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cayley-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn apply_left_zero() {
    let out = cayley(&["apply", "--catalog", "S1", "--word", "a", "--input", "a,a,a"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.trim(), "a,a,a");
}

#[test]
fn data_format_reports_status_and_result() {
    let report = data(&["apply", "--catalog", "S1", "--word", "a", "--input", "a,a,a"]);
    assert_eq!(report["status"], "ok");
    assert_eq!(report["result"]["output"], serde_json::json!(["a", "a", "a"]));
    assert_eq!(report["command"][2], "apply");
    assert!(report["timing_ms"].as_f64().unwrap() >= 0.0);

    let report = data(&["show", "--catalog", "NOPE"]);
    assert_eq!(report["status"], "error");
    assert!(report["result"]["message"].as_str().unwrap().contains("NOPE"));
}

#[test]
fn group_enumeration_hits_the_cap() {
    let out = cayley(&["enumerate", "--catalog", "S5", "--max", "62"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("exceeded"), "{}", out.stdout);
    let report = data(&["enumerate", "--catalog", "S4"]);
    assert_eq!(report["status"], "ok");
}

#[test]
fn verify_theorem_order_two() {
    let out = cayley(&["verify-theorem", "--order", "2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("order 2: 5 cases, 4 aperiodic, all pass"), "{}", out.stdout);
    assert_eq!(cayley(&["verify-theorem", "--order", "4"]).code, EXIT_ERROR);
}

#[test]
fn gen_order_counts() {
    let out = cayley(&["gen-order", "--order", "3"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("24 semigroups of order 3"), "{}", out.stdout);
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(cayley(&["show", "--catalog", "NOPE"]).code, EXIT_ERROR);
    assert_eq!(cayley(&["bogus"]).code, EXIT_ERROR);
    assert_eq!(cayley(&["apply", "--catalog", "S1", "--word", "q", "--input", "a"]).code, EXIT_ERROR);
    let out = cayley(&["divide", "--catalog", "S3", "--ideal", "0"]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("0-minimal"), "{}", out.stderr);
}

#[test]
fn magma_files() {
    let path = temp_file("magma.json", r#"{"name":"bad","elements":["a","b"],"table":[[1,0],[0,0]]}"#);
    let path = path.to_str().unwrap();
    assert_eq!(cayley(&["show", path]).code, EXIT_ERROR);
    let out = cayley(&["show", path, "--allow-magma"]);
    assert_eq!(out.code, EXIT_VERDICT);
    assert!(out.stdout.contains("not associative"), "{}", out.stdout);
}

#[test]
fn tower_verdicts() {
    let out = cayley(&["tower", "verify", "--catalog", "S3", "--ideal", "0", "--jclass", "1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let path = temp_file("s4one.json", &format::emit(&catalog::s4().adjoin_identity()));
    let path = path.to_str().unwrap();
    let out = cayley(&["tower", "verify", path, "--ideal", "x,0", "--jclass", "1"]);
    assert_eq!(out.code, EXIT_VERDICT, "{}", out.stdout);
    let out = cayley(&["tower", "verify", path, "--ideal", "0", "--jclass", "x"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
}

#[test]
fn help_and_version_succeed() {
    for args in [&["--help"][..], &["--version"], &["tower", "--help"]] {
        let out = cayley(args);
        assert_eq!(out.code, EXIT_OK, "{args:?}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn results_are_deterministic() {
    let args = ["enumerate", "--catalog", "M5"];
    let first = data(&args);
    let second = data(&args);
    assert_eq!(first["result"], second["result"]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cayley");
    let status = Command::new(bin).args(["mem", "--catalog", "S3", "--index"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&status.stdout).trim(), "mem aperiodicity index: 2");
    let status = Command::new(bin).args(["show", "--catalog", "NOPE"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_ERROR));
    assert!(String::from_utf8_lossy(&status.stderr).contains("unknown catalog key"));
}
