use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_padic-heights"));
    c.env_remove("PADIC_HEIGHTS_PREC");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check_envelope(v: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/report-v1.schema.json")).unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(v.get(key.as_str().unwrap()).is_some(), "missing {key}");
    }
    assert_eq!(v["schema_version"], 1);
}

const COMPARE: &[&str] = &["compare", "--p", "5", "--q", "125", "--branch", "0", "--prec", "30", "--seed", "7", "--samples", "100"];

#[test]
fn compare_passes() {
    let out = run(COMPARE);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    check_envelope(&v);
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["samples"].as_array().unwrap().len(), 100);
    assert!(v["precision"]["achieved"].as_i64().unwrap() >= 25);
}

#[test]
fn reports_are_deterministic() {
    assert_eq!(run(COMPARE).stdout, run(COMPARE).stdout);
}

#[test]
fn negative_control_fails_mathematically() {
    let mut args = COMPARE.to_vec();
    args.push("--schneider-constraint");
    let out = run(&args);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    check_envelope(&v);
    assert_eq!(v["pass"], false);
}

#[test]
fn usage_errors_exit_one_with_json() {
    for args in [
        &["compare", "--p", "5"][..],
        &["mt", "--p", "5", "--q", "abc", "--u", "1", "--v", "1"],
        &["compare", "--p", "5", "--q", "125", "--seed", "1", "--prec", "5"],
        &["global-height", "--curve", "0,-1,1,-10,-20", "--p", "5", "--point", "5,5"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
        assert!(err["error"]["message"].is_string());
    }
}

#[test]
fn derham_reduce_log_form() {
    let out = run(&["derham-reduce", "--form", "1 * z1^-1 d z_1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["coeffs"], serde_json::json!(["1"]));
    let out = run_stdin(&["derham-reduce", "--input", "-"], "2 * z1^-1 d z_1\n3 * z1 d z_1\n");
    assert_eq!(json(&out)["result"]["coeffs"], serde_json::json!(["2"]));
}

#[test]
fn precision_from_environment() {
    let out = bin().args(["product-formula", "--p", "7", "--alpha", "-98/15"]).env("PADIC_HEIGHTS_PREC", "17").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["precision"]["requested"], 17);
}

#[test]
fn product_formula_branch_defect() {
    let out = run(&["product-formula", "--p", "5", "--alpha", "10", "--branch", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["product-formula", "--p", "5", "--alpha", "10"]).status.code(), Some(0));
}

#[test]
fn global_height_of_torsion_is_zero() {
    let out = run(&["global-height", "--curve", "0,-1,1,-10,-20", "--p", "11", "--point", "5,5", "--prec", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["total"]["unit_digits"], serde_json::json!([]));
}

#[test]
fn global_height_report_shape() {
    let out = run(&["global-height", "--curve", "0,-1,1,0,-2", "--p", "5", "--point", "2,-2", "--point2", "2,1", "--prec", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    check_envelope(&v);
    let primes: Vec<u64> = v["result"]["per_prime"].as_array().unwrap().iter().map(|t| t["prime"].as_u64().unwrap()).collect();
    assert_eq!(primes, vec![5, 7, 41]);
}

#[test]
fn frobenius_and_mt() {
    let out = run(&["frobenius", "--curve", "1,1", "--p", "7", "--prec", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["a_p"], 3);
    let out = run(&["mt", "--p", "5", "--q", "125", "--branch", "1", "--u", "5", "--v", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lift_from_stdin() {
    let diagram = r#"{"schema_version":1,"p":7,"precision":20,"torus_rank":1,"abelian":{"curve":[1,1]},
        "mix_g":[["2"],["3"]],"hodge_lift_g":[["1"],["5"]],"mix_a":[["1","2","4"]],"hodge_lift_a":[["1","6"]]}"#;
    let out = run_stdin(&["lift", "--diagram", "-"], diagram);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["dim_w_a"], 2);
    let out = run_stdin(&["lift", "--diagram", "-"], r#"{"schema_version":1}"#);
    assert_eq!(out.status.code(), Some(1));
}
