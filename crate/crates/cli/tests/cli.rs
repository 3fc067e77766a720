use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_padic-hg"))
        .args(args)
        .envs(env.iter().copied())
        .output()
        .expect("binary runs");
    (out.status.code().expect("exited"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

const QUARTER: [&str; 4] = ["--top", "0,1/2,0,1/2", "--bottom", "1/4,3/4,1/4,3/4"];

fn eval_args<'a>(extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["eval-g", "--p", "11", "--r", "3"];
    v.extend(QUARTER);
    v.extend(extra);
    v
}

#[test]
fn eval_g_at_1331() {
    // 68 matches the point count of y^2 = x(x-1)(x+2) over F_1331
    let (code, v) = json(&eval_args(&["--t", "4", "--bound", "150"]));
    assert_eq!(code, 0);
    assert_eq!(v["integer"], 68);
    assert_eq!(v["precision"], 3);
    assert_eq!(v["padic_value"]["modulus"], "1331");
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn precision_only_rises() {
    let (_, lo) = json(&eval_args(&["--t", "4", "--bound", "150", "--precision", "1"]));
    let (_, hi) = json(&eval_args(&["--t", "4", "--bound", "150", "--precision", "5"]));
    assert_eq!(lo["precision"], 3);
    assert_eq!(hi["precision"], 5);
    assert_eq!(hi["integer"], 68);
}

#[test]
fn eval_g_errors() {
    let (code, v) = json(&eval_args(&["--t", "0"]));
    assert_eq!((code, v["error"].as_str()), (3, Some("ZeroArgument")));

    let mut args = vec!["eval-g", "--p", "4"];
    args.extend(QUARTER);
    args.extend(["--t", "1"]);
    let (code, v) = json(&args);
    assert_eq!((code, v["error"].as_str()), (2, Some("NotPrime")));

    let (code, v) = json(&["eval-g", "--p", "5", "--top", "1/x", "--bottom", "0", "--t", "1"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("ParseError")));

    let (code, v) = json(&["eval-g", "--p", "5", "--top", "1/2", "--t", "1"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("InvalidParameters")));
}

#[test]
fn rational_argument_reduces_mod_p() {
    // 1/4 = 2 mod 7
    let args = |t| ["eval-g", "--p", "7", "--top", "1/2,1/2", "--bottom", "0,0", "--t", t];
    assert_eq!(json(&args("1/4")).1["integer"], json(&args("2")).1["integer"]);
    let (code, v) = json(&args("1/7"));
    assert_eq!((code, v["error"].as_str()), (3, Some("DenominatorDivisibleByP")));
}

#[test]
fn trace_legendre() {
    let (code, v) = json(&["trace", "--family", "legendre", "--p", "5", "--r", "1", "--lambda", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["count"].as_i64(), v["trace"].as_i64()), (Some(8), Some(-2)));
    assert_eq!(v["hasse_ok"], true);

    let (code, v) = json(&["trace", "--family", "legendre", "--p", "5", "--r", "1", "--lambda", "1"]);
    assert_eq!((code, v["error"].as_str()), (3, Some("SingularCurve")));
}

#[test]
fn trace_families() {
    let (code, v) = json(&["trace", "--family", "cd", "--p", "11", "--r", "1", "--c", "3", "--d", "5"]);
    assert_eq!((code, &v["hasse_ok"]), (0, &Value::Bool(true)));
    // the same curve through the long form
    let (_, w) = json(&["trace", "--family", "weierstrass", "--p", "11", "--a2", "3", "--a6", "5"]);
    assert_eq!(v, w);
    let (code, v) = json(&["trace", "--family", "fg", "--p", "11", "--f", "1"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("UsageError")));
}

#[test]
fn verify_passing_suite() {
    let (code, v) = json(&["verify", "--suite", "t13", "--pmax", "7", "--rmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["failed"], 0);
    assert!(v["instances"].as_array().unwrap().iter().all(|i| i["pass"] == true));
}

#[test]
fn verify_failure_serializes_instances() {
    let (code, v) = json(&["verify", "--suite", "corollary"]);
    assert_eq!(code, 1);
    let lhs: Vec<&str> = v["instances"].as_array().unwrap().iter().map(|i| i["lhs"].as_str().unwrap()).collect();
    assert_eq!(lhs, ["68", "-72", "-22", "-58"]);
}

#[test]
fn verify_unknown_suite() {
    let (code, v) = json(&["verify", "--suite", "t20"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("InvalidParameters")));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["verify", "--suite", "t15", "--pmax", "7", "--rmax", "1", "--samples", "4"];
    let (_, a) = run(&args);
    let (_, b) = run_env(&args, &[("PADIC_HG_THREADS", "1")]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(format!("{v}\n"), a);
}

#[test]
fn thread_cap_must_be_positive() {
    let (code, _) = run_env(&["verify", "--suite", "t13", "--pmax", "5"], &[("PADIC_HG_THREADS", "0")]);
    assert_eq!(code, 2);
}

#[test]
fn csv_and_plain_formats() {
    let (_, csv) = run(&["trace", "--family", "legendre", "--p", "5", "--lambda", "2", "--format", "csv"]);
    assert_eq!(csv, "count,hasse_ok,trace\n8,true,-2\n");
    let (_, plain) = run(&["verify", "--suite", "t13", "--pmax", "5", "--rmax", "1", "--format", "plain"]);
    assert!(plain.starts_with("t13: 2 passed, 0 failed\n"), "{plain}");
}

#[test]
fn oracles() {
    let (code, v) = json(&["oracle", "gauss", "--p", "13", "--k", "3"]);
    assert_eq!(code, 0);
    assert!((v["gauss_sum"]["abs"].as_f64().unwrap() - 13f64.sqrt()).abs() < 1e-9);

    let (code, v) = json(&["oracle", "dh", "--p", "5", "--r", "2", "--m", "6", "--psi", "7"]);
    assert_eq!((code, &v["holds"]), (0, &Value::Bool(true)));
    let (code, v) = json(&["oracle", "dh", "--p", "13", "--m", "5", "--psi", "1"]);
    assert_eq!((code, v["error"].as_str()), (3, Some("HypothesisViolation")));

    // J(T, T^{-1}) = -T(-1)
    let (_, v) = json(&["oracle", "jacobi", "--p", "13", "--a", "1", "--b", "-1"]);
    assert!((v["jacobi_sum"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    // -q phi(-1) 2F1(phi, phi; e | 2) is the trace of y^2 = x(x-1)(x-2) over F_13
    let (_, v) = json(&["oracle", "greene", "--p", "13", "--top", "6,6", "--bottom", "0", "--x", "2"]);
    let (_, t) = json(&["trace", "--family", "legendre", "--p", "13", "--lambda", "2"]);
    let f = v["value"]["re"].as_f64().unwrap();
    assert_eq!((-13.0 * f).round() as i64, t["trace"].as_i64().unwrap());
}
