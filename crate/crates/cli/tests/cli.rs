use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn qideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qideal")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qideal-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn validate_every_data_file() {
    for entry in std::fs::read_dir(data("")).unwrap() {
        let path = entry.unwrap().path();
        let o = qideal(&["validate", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}: {}", path.display(), String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout_json(&o)["valid"], true);
    }
}

#[test]
fn classify_reports_each_class() {
    let o = qideal(&[
        "classify",
        data("godel5_dleft.json").to_str().unwrap(),
        data("godel5_flat.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["flat"], true);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["forward_cauchy"], false);
    assert_eq!(v["irreducible_witness"]["reason"], "lower_pair");
}

#[test]
fn enumerate_writes_ideal_files() {
    let out = scratch("enum");
    let o = qideal(&[
        "--out",
        out.to_str().unwrap(),
        "enumerate",
        data("boolean4_discrete2.json").to_str().unwrap(),
        "--class",
        "fc",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["count"], 2);
    assert!(out.join("ideal-1.json").exists());
    let v = qideal(&["validate", out.join("ideal-0.json").to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn scott_reports_axioms() {
    let o = qideal(&["scott", data("luk3.json").to_str().unwrap(), "--class", "flat", "--mode", "top"]);
    // a quantale file is not a Q-order
    assert_eq!(code(&o), 2);
    let base = data("godel5_dleft.json");
    let o = qideal(&["scott", base.to_str().unwrap(), "--class", "irr", "--mode", "cotop"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["mode"], "cotopology");
    assert_eq!(v["stratified"], true);
    // flat ideals that are not irreducible break closure under binary joins
    let v = stdout_json(&qideal(&["scott", base.to_str().unwrap(), "--class", "flat", "--mode", "cotop"]));
    assert_eq!(v["axioms"]["holds"][1], false);
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&qideal(&["check", "BOOLEAN4_COUNTEREXAMPLE"])), 0);
    assert_eq!(code(&qideal(&["check", "NO_SUCH_CHECK"])), 2);
    assert_eq!(code(&qideal(&["--budget", "3", "check", "SATURATION_FLAT"])), 2);
    assert_eq!(code(&qideal(&["check", "GODEL_FLAT_NOT_IRR", "--param", "b"])), 2);
    let list = qideal(&["check", "--list"]);
    assert_eq!(code(&list), 0);
    assert!(String::from_utf8_lossy(&list.stdout).lines().count() >= 20);
}

#[test]
fn report_json_is_seed_stable() {
    let run = || {
        let mut v = stdout_json(&qideal(&["--seed", "7", "check", "FC_SUBSET_FLAT"]));
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["seed"], 7);
    assert_eq!(a["verdict"], "pass");
}

#[test]
fn counterexample_witness_round_trips() {
    let out = scratch("search");
    let o = qideal(&[
        "--out",
        out.to_str().unwrap(),
        "search-counterexample",
        "--shape",
        "quantale=godel_chain,n=4,points=2,separate=flat/irr",
    ]);
    assert_eq!(code(&o), 1, "a separation is a finding");
    assert!(out.join("report.json").exists());
    let w = out.join("search-0.json");
    let c = qideal(&["classify", w.to_str().unwrap(), w.to_str().unwrap()]);
    assert_eq!(code(&c), 0);
    let v = stdout_json(&c);
    assert_eq!((v["flat"].as_bool(), v["irreducible"].as_bool()), (Some(true), Some(false)));
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn unreadable_input_is_a_usage_error() {
    assert_eq!(code(&qideal(&["validate", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&qideal(&["enumerate", data("godel5_dleft.json").to_str().unwrap(), "--class", "nope"])), 2);
    assert_eq!(code(&qideal(&[])), 2);
}
