use std::process::{Command, Output};

use serde_json::Value;

fn modinv(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_modinv"));
    cmd.args(args).env("RUST_LOG", "warn").env_remove("MODINV_MAX_DEGREE").env_remove("MODINV_MAX_BASIS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_config(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("modinv-{}-{name}.conf", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn group_of_bertin() {
    let out = modinv(&["group", "--example", "bertin"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["order"], 4);
    assert_eq!(v["result"]["modular"], true);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["schema_version", "command", "config", "result", "provenance"]);
    assert_eq!(v["schema_version"], "1");
}

#[test]
fn diagnose_swap_is_cm_and_deterministic() {
    let a = modinv(&["diagnose", "--example", "swap2"], &[]);
    let b = modinv(&["diagnose", "--example", "swap2"], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["result"]["is_cm"], true);
    assert_eq!(v["result"]["consistent"], true);
    // every provenance line ends in a citation
    for line in v["provenance"].as_array().unwrap() {
        assert!(line.as_str().unwrap().ends_with(')'), "{line}");
    }
}

#[test]
fn config_file_round_trip_through_the_binary() {
    let path = write_config("cyc3", "# shift\np = 3\nn = 3\ngenerator = 0 1 0; 0 0 1; 1 0 0\ncommand = invariants\n");
    let out = modinv(&["invariants", "--config", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["degrees"], serde_json::json!([1, 2, 3, 3]));
}

#[test]
fn validation_errors_exit_1() {
    let path = write_config("bad", "p = 4\nn = 1\ngenerator = 1\n");
    let out = modinv(&["group", "--config", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    let out = modinv(&["group", "--example", "nope"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cyc3_f2"));

    let out = modinv(&["transfer", "--example", "cyc3_f2"], &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resource_caps_exit_2() {
    let out = modinv(&["present", "--example", "bertin"], &[("MODINV_MAX_BASIS", "5")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grade_of_the_example_ideal() {
    let out = modinv(&["grade", "--example", "bertin"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["grade"], 2);
    let prov: Vec<&str> = v["provenance"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
    assert!(prov.contains(&"ℓ(H²_𝔞(R)) = ∞ (Cor 3.8)"));
    assert!(prov.contains(&"ℓ(H³_𝔪(R)) = ∞ (Example 3.9)"));
    for inf in v["result"]["inferences"].as_array().unwrap() {
        assert!(!inf["citation"].as_str().unwrap().is_empty());
    }
}

#[test]
fn verify_single_criterion() {
    let out = modinv(&["verify", "--only", "6"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 1);
    assert_eq!(v["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS  6 three_variable_cm"));

    let out = modinv(&["verify", "--only", "zzz"], &[]);
    assert_eq!(out.status.code(), Some(1));
}
