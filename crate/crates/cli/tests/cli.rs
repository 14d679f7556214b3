use std::path::Path;
use std::process::{Command, Output};

use qdlab::Q;
use serde_json::Value;

fn qdlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdlab")).args(args).current_dir(dir).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn file(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn built_surfaces_re_parse_identically() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["pillowcase", "marked_torus", "l_origami", "generic_genus2"] {
        for mode in ["exact", "float"] {
            let first = qdlab(&["build", name, "--mode", mode, "--out", "a.json"], dir.path());
            assert!(first.status.success());
            let again = qdlab(&["build", "a.json", "--mode", mode, "--out", "b.json"], dir.path());
            assert!(again.status.success());
            let a = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
            assert_eq!(a, std::fs::read_to_string(dir.path().join("b.json")).unwrap(), "{name} {mode}");
        }
    }
}

#[test]
fn malformed_surface_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = json(&qdlab(&["build", "pillowcase"], dir.path()));
    s["edges"]["0"]["re"] = "2".into();
    std::fs::write(dir.path().join("bad.json"), s.to_string()).unwrap();
    let out = qdlab(&["build", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "ClosureViolation");
    assert_eq!(err["triangle"], 0);

    let out = qdlab(&["build", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cover_homology_periods_deform_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(qdlab(&["cover", "generic_genus2", "--out", "c.json"], d).status.success());
    assert_eq!(file(d, "c.json")["genus"], 5);
    assert!(qdlab(&["homology", "c.json", "--out", "h.json"], d).status.success());
    assert_eq!(file(d, "h.json")["ranks"]["relative"], 6);
    let p = json(&qdlab(&["periods", "c.json", "h.json"], d));
    assert_eq!(p["coords"].as_array().unwrap().len(), 6);

    let mut v = p.clone();
    for (i, c) in v["coords"].as_array_mut().unwrap().iter_mut().enumerate() {
        *c = serde_json::json!([if i == 0 { "1/10" } else { "0" }, "0"]);
    }
    std::fs::write(d.join("v.json"), v.to_string()).unwrap();
    let out = qdlab(&["deform", "c.json", "h.json", "--v", "v.json", "--out", "s.json", "--emit-svg", "s.svg"], d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_to_string(d.join("s.svg")).unwrap().starts_with("<svg"));
    assert!(qdlab(&["cover", "s.json", "--out", "c2.json"], d).status.success());
    let moved = json(&qdlab(&["periods", "c2.json", "h.json"], d));
    let q = |v: &Value| v.as_str().unwrap().parse::<Q>().unwrap();
    assert_eq!(q(&moved["coords"][0][0]), q(&p["coords"][0][0]) + Q::new(1.into(), 10.into()));
    assert_eq!(moved["coords"][1], p["coords"][1]);
}

#[test]
fn strata_lists_match_hand_counts() {
    let dir = tempfile::tempdir().unwrap();
    let empty = json(&qdlab(&["strata", "--g", "0", "--m", "3"], dir.path()));
    assert!(empty["nodes"].as_array().unwrap().is_empty());
    let out = qdlab(&["strata", "--g", "0", "--m", "4", "--dot", "s.dot"], dir.path());
    assert_eq!(json(&out)["labels"], serde_json::json!(["(0, 4, {}, -1)"]));
    assert!(std::fs::read_to_string(dir.path().join("s.dot")).unwrap().starts_with("digraph"));
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = qdlab(&["verify", "thurston", "--surface", "l_origami", "--seed", "7", "--samples", "8"], dir.path());
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
    let out = qdlab(&["verify", "first-variation", "--surface", "pillowcase", "--samples", "5"], dir.path());
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn impossible_tolerance_fails_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = qdlab(&["verify", "demailly", "--tol", "1e-30"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}
