use std::path::PathBuf;
use std::process::{Command, Output};

use quadlie_cli::report::Report;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn torus_is_not_profree() {
    let out = run(&["profree", "--truncation", "N=4,K=3", &path("torus.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["certificate"]["witness"]["class"], "[v∧w]");
    assert_eq!(r["truncation"], "N=4,K=3");
}

#[test]
fn sphere_is_profree_with_file_window() {
    let out = run(&["profree", &path("sphere2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["certificate"]["scope"], "within window");
    assert_eq!(r["truncation"], "N=6,K=3");
}

#[test]
fn homotopy_lie_algebra_of_circle_wedge() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.json");
    let out = run(&[
        "wedge-model",
        "--spheres",
        "1,1",
        "--truncation",
        "N=4,K=3",
        "--out",
        model.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["hla", "--K", "3", model.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["layer_dims"], serde_json::json!([2, 1, 2]));
    let out = run(&["hla", "--K", "3", &path("circles.json")]);
    assert_eq!(report(&out)["result"]["layer_dims"], serde_json::json!([2, 1, 2]));
}

#[test]
fn bch_on_heisenberg() {
    let out = run(&["bch", "--class", "2", &path("heisenberg.json"), "--x", "x", "--y", "y"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["value"], "x + y + 1/2 [x,y]");
    let out = run(&["bch", "--class", "1", &path("heisenberg.json"), "--x", "x", "--y", "-x"]);
    assert_eq!(report(&out)["result"]["value"], "0");
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["frobnicate", &path("torus.json")]).status.code(), Some(2));
    assert_eq!(run(&["profree", &path("torus.json")]).status.code(), Some(2));
    assert_eq!(run(&["profree", "--truncation", "N=4", &path("torus.json")]).status.code(), Some(2));
    assert_eq!(run(&["lcs", &path("missing.json")]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(run(&["lcs", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["bch", &path("heisenberg.json"), "--x", "x", "--y", "y"]).status.code(), Some(2));
}

#[test]
fn diagnostics_exit_one() {
    let out = run(&["validate", &path("not_jacobi.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["result"]["violation"].as_str().unwrap().contains("Jacobi"));
    let out = run(&["ce", &path("not_jacobi.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ce_then_hla_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ce = dir.path().join("ce.json");
    let out = run(&["ce", &path("heisenberg.json"), "--out", ce.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["hla", "--K", "2", ce.to_str().unwrap()]);
    let lie = &report(&out)["result"]["lie"];
    let original: Value =
        serde_json::from_str(&std::fs::read_to_string(data("heisenberg.json")).unwrap()).unwrap();
    assert_eq!(lie["brackets"], original["brackets"]);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let args = ["free-product", "--truncation", "N=3,K=3", &path("line.json"), &path("heisenberg.json")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let parsed: Report = serde_json::from_slice(&a.stdout).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again.as_bytes(), a.stdout.as_slice());
    let v = report(&a);
    assert_eq!(v["result"]["layer_dims"], serde_json::json!([3, 3, 6]));
}

#[test]
fn other_verbs() {
    let out = run(&["minimal-model", "--truncation", "N=4,K=3", &path("s2_cohomology.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["certificate"]["quasi_isomorphism"], true);
    let out = run(&["eta-check", "--word-bound", "3", &path("heisenberg.json")]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["acyclic-closure", "--truncation", "N=3,K=3", &path("torus.json")]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["exp", "--word-bound", "4", &path("heisenberg.json"), "--x", "x + y"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["certificate"]["log_exp_is_identity"], true);
    let out = run(&["cohomology", "--truncation", "N=3,K=1", &path("torus.json")]);
    assert_eq!(report(&out)["result"]["dims"], serde_json::json!([1, 2, 1, 0]));
    let out = run(&["wedge-h", "--truncation", "N=3,K=3", &path("torus.json")]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["lcs", &path("heisenberg.json"), "--format", "table"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("layer_dims"));
    let out = run(&["validate", &path("sphere2.json")]);
    assert_eq!(report(&out)["result"]["kind"], "sullivan");
}
