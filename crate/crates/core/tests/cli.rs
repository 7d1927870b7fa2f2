use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plektonlab")).args(args).env("PLEKTONLAB_SWEEP", "0.05").output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn model_validate_exit_codes() {
    assert_eq!(code(&["model-validate", "--model", &data("fermion.json")]), 0);
    assert_eq!(code(&["model-validate", "--model", &data("z3.json")]), 0);
    assert_eq!(code(&["model-validate", "--model", &data("z3-bad.json")]), 1);
    let out = run(&["model-validate", "--model", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed.json:2:"));
    assert_eq!(code(&["model-validate", "--model", &data("missing.json")]), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["verify", "--suite", "bogus"]), 2);
    assert_eq!(code(&["winding", "--scene", &data("opposed.json"), "--pair", "C2"]), 2);
    assert_eq!(code(&["winding", "--scene", &data("opposed.json"), "--pair", "C2:nope"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn winding_table() {
    let out = run(&["winding", "--scene", &data("opposed.json"), "--pair", "C2:C1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "plektonlab/1");
    assert_eq!(v["checks"][0]["exact"], "-1");
    let out = run(&["winding", "--scene", &data("opposed.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["error"], 2);
}

#[test]
fn normal_form_agrees_with_lattice() {
    let out = run(&[
        "normal-form", "--model", &data("z3.json"), "--scene", &data("opposed.json"), "--word", &data("word.json"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "all", "--seed", "9", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    let mut par = args.to_vec();
    par.push("--parallel");
    let c = run(&par);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 9);
}

#[test]
fn cpt_precondition() {
    let out = run(&["verify", "--suite", "cpt", "--scene", &data("off-axis.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["status"], "error");
    assert!(v["checks"][0]["note"].as_str().unwrap().contains("j-invariant"));
}

#[test]
fn braid_suite_on_fermion() {
    assert_eq!(code(&["verify", "--suite", "braid", "--model", &data("fermion.json")]), 0);
    assert_eq!(code(&["verify", "--suite", "all", "--model", &data("z3.json"), "--seed", "3"]), 0);
}
