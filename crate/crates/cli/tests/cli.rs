use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_destab"))
        .current_dir(root())
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn rational(v: &Value) -> BigRational {
    let s = v.as_str().unwrap();
    let (n, d) = s.split_once('/').unwrap();
    BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn kempf_on_the_double_line() {
    let v = json(&["kempf", "--state", "data/double_line_state.json"]);
    assert_eq!(v["status"], "Unstable");
    assert_eq!(v["direction"], serde_json::json!([1, 0, 0]));
    assert_eq!(rational(&v["nu_min"]["normsq"]), ratio(8, 3));
    assert_eq!(rational(&v["nu_min"]["numerator"]), ratio(-8, 3));
}

#[test]
fn kempf_from_a_hilbert_point() {
    let v = json(&["kempf", "--ideal", "data/conic.json", "--degree", "2"]);
    assert_eq!(v["status"], "Stable");
    assert_eq!(v["direction"], Value::Null);
}

#[test]
fn df_on_the_conic() {
    let v = json(&["df", "--ideal", "data/conic.json", "--weights", "[-1,0,0]"]);
    assert_eq!(rational(&v["df"]["df"]), ratio(1, 2));
    assert_eq!(v["central_fiber"]["generators"], serde_json::json!(["x*z"]));
    let v = json(&["df", "--ideal", "data/conic.json", "--weights", "[1,0,0]"]);
    assert_eq!(rational(&v["df"]["df"]), ratio(1, 1));
}

#[test]
fn mu_at_the_trivial_weight() {
    let v = json(&["mu", "--state", "data/conic_state.json", "--weights", "[0,0,0]"]);
    assert_eq!(rational(&v["mu"]), ratio(0, 1));
    assert_eq!(v["nu"], Value::Null);
}

#[test]
fn rationals_round_trip() {
    let v = json(&["kempf", "--state", "data/double_line_state.json"]);
    for x in v["certificate"]["q"].as_array().unwrap() {
        let r = rational(x);
        assert_eq!(format!("{}/{}", r.numer(), r.denom()), x.as_str().unwrap());
    }
}

#[test]
fn approx_is_labelled() {
    let v = json(&["kempf", "--state", "data/double_line_state.json", "--approx"]);
    assert!(v["approx"]["note"].as_str().unwrap().contains("exact"));
    assert_eq!(rational(&v["certificate"]["normsq"]), ratio(8, 3));
}

#[test]
fn table_format() {
    let out = run(&["mu", "--state", "data/conic_state.json", "--weights", "[0,0,0]", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("mu") && l.ends_with("0/1")));
}

#[test]
fn repeat_runs_are_identical() {
    let args = ["sweep", "--ideal", "data/conic.json", "--exponent", "1", "--denominator-bound", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let missing = run(&["mu", "--state", "nope.json", "--weights", "[1,2]"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error: --state"));

    let short = run(&["mu", "--state", r#"{"characters":[[1]]}"#, "--weights", "[1]"]);
    assert_eq!(short.status.code(), Some(2));

    let mismatch = run(&["mu", "--state", "data/conic_state.json", "--weights", "[1,2]"]);
    assert_eq!(mismatch.status.code(), Some(2));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn too_large_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_destab"))
        .current_dir(root())
        .env("DESTAB_MAX_CELLS", "3")
        .args(["kempf", "--ideal", "data/twisted_cubic.json", "--degree", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}
