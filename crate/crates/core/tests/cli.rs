//! Runs the `evencliff` binary end to end.

use std::process::Command;

use serde_json::Value;

fn evencliff(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_evencliff")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn classify_over_f2() {
    let (code, out, _) = evencliff(&["classify", "--ring", "Fp:2", "x1*x2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"stratum\":2,\"P3\":\"0\",\"semiregular\":false}\n");
}

#[test]
fn census_over_f2_and_gate() {
    let (code, out, _) = evencliff(&["census", "--ring", "Fp:2"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["form_count"], 64);
    assert_eq!(report["similarity_classes"], report["algebra_classes"]);
    assert_eq!(report["bijection_verified"], true);
    let (code, _, err) = evencliff(&["census", "--ring", "Fp:5"]);
    assert_eq!(code, 2);
    assert!(err.contains("too large"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(evencliff(&[]).0, 2);
    assert_eq!(evencliff(&["semiregular", "x1^2"]).0, 2);
    assert_eq!(evencliff(&["semiregular", "--ring", "Fp:4", "x1^2"]).0, 2);
    assert_eq!(evencliff(&["semiregular", "--ring", "Q", "x1^2 +"]).0, 2);
    assert_eq!(evencliff(&["--help"]).0, 0);
}

#[test]
fn clifford_check_table_and_selftest() {
    let (code, out, _) = evencliff(&["clifford", "--ring", "Q", "x1*x2 + x3^2", "--t", "1/2,0,-1", "--check-table"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["check_table"], true);
    assert_eq!(v["azumaya"], true);
    assert_eq!(v["table"]["basis"][1], "e1");
    let (code, out, _) = evencliff(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["passed"], true);
}

#[test]
fn lift_the_identity() {
    // the identity of θ(q1) lifts to an isometry
    let (code, out, err) = evencliff(&[
        "lift", "--ring", "Fp:5", "x1*x2 + x3^2", "x1*x2 + x3^2", "--h", "1 0 0 0 0 1 0 0 0 0 1 0 0 0 0 1", "--section", "prime",
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["l"], "1");
    assert_eq!(v["k"], Value::Null);
}
