use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootlift")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mixed_parity_is_obstructed_with_certificate() {
    let out = run(&["--format", "json", "lift-check", "--group", "C2.sc", "--tilde", "[[1]]", "--hodge", &fixture("sp4_mixed_parity.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    let cert = &v["report"]["certificate"];
    assert_eq!((cert["tau"].as_str(), cert["tau_prime"].as_str()), (Some("t0"), Some("t1")));
}

#[test]
fn same_parity_lifts() {
    let out = run(&["--format", "json", "lift-check", "--group", "C2.sc", "--hodge", &fixture("sp4_same_parity.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["report"]["certificate"].is_null());
}

#[test]
fn seed_is_recorded() {
    let out = run(&["--format", "json", "--seed", "77", "classify-simple-types", "--max-rank", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["seed"], 77);
    let table = run(&["classify-simple-types", "--max-rank", "3"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.starts_with("classify-simple-types (seed "));
    assert!(text.contains("C3"));
}

#[test]
fn malformed_json_exits_two() {
    let out = run(&["lift-check", "--group", "C2.sc", "--hodge", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["torus-lift", "--coch", "[[2, 3]", "--lambda", "[1]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plethysm_bounds() {
    assert_eq!(run(&["plethysm-check", "--g", "1"]).status.code(), Some(0));
    assert_eq!(run(&["plethysm-check", "--g", "4"]).status.code(), Some(3));
}

#[test]
fn param_lift_cm_recipe() {
    let out = run(&["--format", "json", "param-lift", "--recipe", "cm-typeA", "--tempered", &fixture("cm_params.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn torus_lift_verdicts() {
    let yes = json(&run(&["--format", "json", "torus-lift", "--coch", "[[2, 3]]", "--lambda", "[1]"]));
    let no = json(&run(&["--format", "json", "torus-lift", "--coch", "[[2, 4]]", "--lambda", "[3]"]));
    assert_ne!(yes["report"], no["report"]);
}

#[test]
fn verify_single_check() {
    let out = run(&["--format", "json", "verify-paper", "--only", "snf"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["report"]["checks"][0]["pass"], true);
}

#[test]
fn heisenberg_demo_runs() {
    let out = run(&["--format", "json", "heisenberg-demo", "--n", "5", "--alpha", "1", "--beta", "2"]);
    assert_eq!(out.status.code(), Some(0));
}
