use std::path::Path;
use std::process::{Command, Output};

fn setdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setdyn")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn check_reads_system_files() {
    let dir = tempfile::tempdir().unwrap();
    let golden = write(dir.path(), "golden.json", r#"{"kind":"finite","states":["0","1"],"map":{"0":["0","1"],"1":["0"]}}"#);
    let out = setdyn(&["check", &golden, "--property", "devaney"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], "TRUE");

    let out = setdyn(&["check", &golden, "--property", "strong-sensitive"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], "FALSE");

    let out = setdyn(&["check", &golden, "--property", "sensitive", "--object", "limit"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_files_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"kind":"finite","states":["0"],"map":{"0":["7"]}}"#);
    let out = setdyn(&["check", &bad, "--property", "transitive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("map.0[0]"));

    let out = setdyn(&["check", "builtin:no-such-map", "--property", "transitive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn undecided_only_exits_with_three() {
    let out = setdyn(&["check", "builtin:tent", "--property", "transitive", "--resolution", "3", "--horizon", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], "UNDECIDED");
}

#[test]
fn pl_checks_and_inverse_objects() {
    let dir = tempfile::tempdir().unwrap();
    let tent = write(
        dir.path(),
        "tent.json",
        r#"{"kind":"pl","pieces":[{"type":"segment","x":["0","1/2"],"a":"2","b":"0"},{"type":"segment","x":["1/2","1"],"a":"-2","b":"2"},{"type":"rect","x":["0","1"],"y":["0","0"]}]}"#,
    );
    let out = setdyn(&["check", &tent, "--property", "strong-sensitive", "--object", "inverse"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], "FALSE");
    assert_eq!(v["certificate"]["kind"], "full-fiber-at");

    let out = setdyn(&["check", &tent, "--property", "lsc"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_reports_bundle() {
    let out = setdyn(&["oracle", "builtin:golden-mean", "--depth", "8", "--period", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["disagreements"], serde_json::json!([]));
    assert_eq!(v["oracle"]["transitive"]["value"], "TRUE");
}

#[test]
fn harness_writes_and_renders_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out_str = out_path.to_str().unwrap();
    let out = setdyn(&["harness", "--claims", "T5.4,T3.2", "--exhaustive", "2", "--random", "50", "--seed", "7", "--out", out_str]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let ids: Vec<&str> = report.as_array().unwrap().iter().map(|r| r["claim_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["T5.4", "T3.2"]);
    assert_eq!(report[0]["status"], "COUNTEREXAMPLE");

    let text = setdyn(&["report", out_str]);
    assert_eq!(text.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&text.stdout).contains("HOLDS-ON-FAMILY"));

    let out = setdyn(&["harness", "--claims", "NOPE", "--exhaustive", "1", "--random", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn examples_command_lists_suite() {
    let out = setdyn(&["examples", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().len() > 20);
}
