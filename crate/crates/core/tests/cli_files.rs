//! The command-line tool on the sample data files.

use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_costack")).args(args).current_dir(data_dir()).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "costack/report@1");
    assert_eq!(v["exit_code"], code);
    (code, v)
}

#[test]
fn circle_has_one_free_generator() {
    let (code, v) = run_json(&["pi1", "circle6.json"]);
    assert_eq!(code, 0);
    let text = v.to_string();
    assert!(text.contains("\"free_rank\":1"), "{text}");
}

#[test]
fn van_kampen_on_the_circle() {
    let (code, v) = run_json(&["vankampen", "circle6.json", "--cover", "arcs2.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["pushout"], "yes");
    assert_eq!(v["report"]["two_pushout"], "yes");
    assert_eq!(v["report"]["colim"], v["report"]["whole"]);
}

#[test]
fn deforming_the_sample_square() {
    let (code, out) = run(&["deform", "square.json"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("costack/report@1 deform"));
    assert!(out.contains("kappa is the identity: true"));
}

#[test]
fn comparison_exit_codes() {
    assert_eq!(run(&["delta", "circle_span.json"]).0, 0);
    assert_eq!(run(&["delta", "collapsing_span.json"]).0, 1);
}

#[test]
fn sheaf_and_stack_checks() {
    assert_eq!(run(&["check-sh", "circle9.json", "--cover", "arcs3.json"]).0, 0);
    assert_eq!(run(&["check-st", "circle9.json", "--cover", "arcs3.json", "--target", "z2.json"]).0, 0);
    assert_eq!(run(&["--budget", "10", "check-st", "circle9.json", "--cover", "arcs3.json"]).0, 2);
}

#[test]
fn bad_inputs() {
    assert_eq!(run(&["pi1", "missing.json"]).0, 3);
    assert_eq!(run(&["no-such-command"]).0, 3);
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    assert_eq!(run(&["validate", broken.to_str().unwrap()]).0, 3);

    let (_, v) = run_json(&["fingerprint", "z2.json"]);
    let mut doc = v["groupoid"].clone();
    doc["table"].as_array_mut().unwrap().pop();
    let invalid = dir.path().join("invalid.json");
    std::fs::write(&invalid, doc.to_string()).unwrap();
    assert_eq!(run(&["validate", invalid.to_str().unwrap()]).0, 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "tc", "circle_span.json"][..],
        &["--json", "nerve", "circle9.json", "--cover", "arcs3.json"],
        &["fingerprint", "torus.json"],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn emitted_groupoids_read_back() {
    let (_, first) = run_json(&["fingerprint", "z2.json"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("again.json");
    std::fs::write(&path, first["groupoid"].to_string()).unwrap();
    let (code, second) = run_json(&["fingerprint", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(first["fingerprint"], second["fingerprint"]);
    assert_eq!(first["groupoid"], second["groupoid"]);
}

#[test]
fn every_subcommand_is_listed() {
    let out = Command::new(env!("CARGO_BIN_EXE_costack")).arg("--help").output().unwrap();
    let help = String::from_utf8(out.stdout).unwrap();
    for cmd in [
        "validate", "pi0", "pi1", "nerve", "lim", "tl", "colim", "tc", "delta", "deform", "filtered-colim",
        "check-cosheaf", "check-sh", "check-st", "vankampen", "terminal-map", "fingerprint",
    ] {
        assert!(help.contains(cmd), "missing {cmd}");
    }
}
