//! Black-box tests of the binary: exit codes, report shape, and
//! round-tripping of generated space files.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plasticity"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_closed_forms() {
    let out = run(&["bounds", "--n", "7", "--eps", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["orbit_bound"], "1/11");
    assert_eq!(v["pair_sum_bound"], "1/20");
    assert_eq!(v["verdict"], "bounds");
}

#[test]
fn validate_accepts_generated_files_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let recipe = r#"{"kind":"sharp_case1","n":5,"eps":"1","a":"1"}"#;
    let out = run(&["generate", "--recipe", recipe, "--out-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let space_path = dir.path().join("domain.json");
    let first = std::fs::read(&space_path).unwrap();

    let out = run(&["validate", space_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "valid");

    // regenerate: byte-identical output
    let dir2 = tempfile::tempdir().unwrap();
    let out = run(&["generate", "--recipe", recipe, "--out-dir", dir2.path().to_str().unwrap()]);
    assert!(out.status.success());
    let second = std::fs::read(dir2.path().join("domain.json")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn modulus_of_generated_sharp_example() {
    let dir = tempfile::tempdir().unwrap();
    let recipe = r#"{"kind":"sharp_case1","n":5,"eps":"1","a":"1"}"#;
    assert!(run(&["generate", "--recipe", recipe, "--out-dir", dir.path().to_str().unwrap()])
        .status
        .success());
    let path = dir.path().join("domain.json");
    let p = path.to_str().unwrap();
    let out = run(&["modulus", p, p, "--eps", "99/100", "--class", "bijections"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["kind"], "value");
    assert_eq!(v["verdict"]["value"], "1/5");
    assert!(v["witnesses"]["minimizing_map"]["table"].is_array());
}

#[test]
fn invalid_matrix_is_rejected_with_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"labels":["a","b"],"dist":[["0","1"],["2","0"]]}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "invalid");
    assert!(v["witnesses"]["violation"].as_str().unwrap().contains("dist[0][1] != dist[1][0]"));
}

#[test]
fn oversized_instances_are_refused() {
    // 13-point equilateral space: subset searches refuse above the
    // default 12-point limit, map searches refuse at 13^13 tables
    let n = 13;
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let dist: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { "0" } else { "1" }.to_string()).collect())
        .collect();
    let file = serde_json::json!({ "labels": labels, "dist": dist });
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let p = path.to_str().unwrap();

    let out = run(&["profile", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));

    let out = run(&["modulus", p, p, "--eps", "1/2"]);
    assert_eq!(out.status.code(), Some(2));

    // raising the limit lets the subset search proceed
    let out = run(&["profile", p, "--max-size", "13"]);
    assert!(out.status.success());
}

#[test]
fn check_reports_na_when_hypothesis_fails() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("small.json");
    let big = dir.path().join("big.json");
    std::fs::write(&small, r#"{"labels":["a","b"],"dist":[["0","1"],["1","0"]]}"#).unwrap();
    std::fs::write(&big, r#"{"labels":["a","b"],"dist":[["0","2"],["2","0"]]}"#).unwrap();
    let out = run(&[
        "check",
        small.to_str().unwrap(),
        big.to_str().unwrap(),
        "--kind",
        "s-comparison",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "n/a");
}

#[test]
fn text_format_renders_the_same_report() {
    let out = run(&["bounds", "--n", "5", "--eps", "1", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("orbit_bound: \"1/5\""));
    assert!(text.contains("verdict: \"bounds\""));
}

#[test]
fn profile_emits_step_functions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.json");
    std::fs::write(
        &path,
        r#"{"labels":["a","b","c"],"dist":[["0","1","1"],["1","0","1"],["1","1","0"]]}"#,
    )
    .unwrap();
    let out = run(&["profile", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let samples = v["profile"]["samples"].as_array().unwrap();
    assert!(!samples.is_empty());
    assert_eq!(samples[0]["N"], 3); // below the only breakpoint everything separates
}

#[test]
fn verify_all_is_deterministic() {
    let a = run(&["verify-all", "--seed", "5", "--size", "3"]);
    let b = run(&["verify-all", "--seed", "5", "--size", "3", "--workers", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
