use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const A2: &str = "type: A2\narrows: 1->2\n";
const D4: &str = "type: D4\narrows: 1->4, 2->4, 3->4\n";

fn workspace() -> (TempDir, PathBuf, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let a2 = dir.path().join("a2.quiver");
    let d4 = dir.path().join("d4.quiver");
    fs::write(&a2, A2).unwrap();
    fs::write(&d4, D4).unwrap();
    (dir, a2, d4)
}

fn meshwork(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meshwork")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn roots_of_a2() {
    let (_dir, a2, _) = workspace();
    let out = json(&meshwork(&["roots", "--quiver", path(&a2)]));
    assert_eq!(out["count"], 3);
    assert_eq!(out["roots"], serde_json::json!([[0, 1], [1, 0], [1, 1]]));
}

#[test]
fn verify_d4_passes() {
    let (_dir, _, d4) = workspace();
    let out = meshwork(&["verify", "--quiver", path(&d4)]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    let meshes = report["checks"].as_array().unwrap().iter().filter(|c| c["kind"] == "mesh").count();
    let injectives = report["checks"].as_array().unwrap().iter().filter(|c| c["kind"] == "injective").count();
    assert_eq!((meshes, injectives), (8, 4));
}

#[test]
fn nonempty_reports_empty() {
    let (_dir, a2, _) = workspace();
    let out = meshwork(&["nonempty", "--quiver", path(&a2), "--e", "1,0", "--d", "1,1", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "empty\n");
    let out = json(&meshwork(&["nonempty", "--quiver", path(&a2), "--e", "0,1", "--d", "1,1"]));
    assert_eq!(out["status"], "nonempty");
}

#[test]
fn poincare_of_the_d4_blow_up() {
    let (_dir, _, d4) = workspace();
    let out = json(&meshwork(&[
        "poincare",
        "--quiver",
        path(&d4),
        "--module",
        "1,1,0,1+1,0,1,1+0,1,1,1",
        "--e",
        "1,1,1,2",
    ]));
    assert_eq!(out["entries"][0]["text"], "1 + 4*q^2 + q^4");
    assert_eq!(out["entries"][0]["euler"], "6");
}

#[test]
fn oracle_count_both_spellings() {
    let (dir, _, _) = workspace();
    let rep = dir.path().join("e.json");
    fs::write(&rep, meshwork::oracle::D4_BLOWUP_E).unwrap();
    let args = ["--rep", path(&rep), "--e", "1,1,1,2", "--primes", "2,3,5"];
    let flat = meshwork(&[&["oracle-count"][..], &args].concat());
    let nested = meshwork(&[&["oracle", "count"][..], &args].concat());
    assert_eq!(flat.stdout, nested.stdout);
    let out = json(&flat);
    assert_eq!(out["interpolant"], "1 + 4*t + t^2");
    assert_eq!(out["counts"][0]["count"], "13");
}

#[test]
fn cc_lists_g_vectors() {
    let (_dir, a2, _) = workspace();
    let out = json(&meshwork(&["cc", "--quiver", path(&a2)]));
    let rows = out.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let s1 = rows.iter().find(|r| r["dim"] == serde_json::json!([1, 0])).unwrap();
    assert_eq!(s1["g_vector"], serde_json::json!([-1, 0]));
}

#[test]
fn outputs_are_deterministic() {
    let (dir, a2, d4) = workspace();
    for args in [
        vec!["homext", "--quiver", path(&d4)],
        vec!["ar", "--quiver", path(&d4), "--dot"],
        vec!["fpoly", "--quiver", path(&d4)],
        vec!["cc", "--quiver", path(&d4)],
        vec!["poincare", "--quiver", path(&a2), "--d", "1,2"],
        vec!["show", "--quiver", path(&d4)],
    ] {
        let first = meshwork(&args);
        assert!(first.status.success(), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(first.stdout, meshwork(&args).stdout, "{args:?}");
    }
    let file = dir.path().join("out.json");
    assert!(meshwork(&["decomp", "--quiver", path(&d4), "--d", "2,2,2,3", "--out", path(&file)]).status.success());
    assert_eq!(fs::read(&file).unwrap(), meshwork(&["decomp", "--quiver", path(&d4), "--d", "2,2,2,3"]).stdout);
}

#[test]
fn errors_exit_with_one() {
    let (dir, a2, _) = workspace();
    assert_eq!(meshwork(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(meshwork(&["roots", "--quiver", "/nonexistent"]).status.code(), Some(1));
    assert_eq!(meshwork(&["decomp", "--quiver", path(&a2), "--d", "1,2,3"]).status.code(), Some(1));
    let bad = dir.path().join("bad.quiver");
    fs::write(&bad, "type: A3\narrows: 1->2, 1->3, 2->3\n").unwrap();
    assert_eq!(meshwork(&["roots", "--quiver", path(&bad)]).status.code(), Some(1));
    assert_eq!(meshwork(&["homext", "--quiver", path(&a2), "--format", "dot"]).status.code(), Some(1));
    assert_eq!(meshwork(&["--help"]).status.code(), Some(0));
}
