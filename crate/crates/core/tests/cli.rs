use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cdc-jtree"))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn analyze_sos2_5() {
    let v = json(&["analyze", &data("sos2_5.json")]);
    assert_eq!(v["admits_junction_tree"], true);
    assert_eq!(v["mst_weight"], 3);
    assert_eq!(v["conflict_edges"], 6);
    assert_eq!(v["pairwise_ib"], true);
}

#[test]
fn analyze_triangle_is_not_pairwise_ib() {
    let v = json(&["analyze", &data("triangle.json")]);
    assert_eq!(v["admits_junction_tree"], false);
    assert_eq!(v["pairwise_ib"], false);
}

#[test]
fn cover_reports_exact_optimum() {
    let v = json(&["cover", &data("sos2_5.json"), "--exact"]);
    assert_eq!(v["size"], 2);
    assert_eq!(v["exact_min"], 2);
}

#[test]
fn formulate_sosk_lp() {
    let out = run(&["formulate", "--n", "3", "--k", "2", "--formulation", "naive"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Subject To\n"));
    assert!(text.contains(" link_2: lam_2 - z_1 - z_2 <= 0\n"));
    assert!(text.ends_with("Binaries\n z_1\n z_2\nEnd\n"));
}

#[test]
fn formulate_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.lp");
    let out = run(&[
        "formulate",
        "--input",
        &data("path3.json"),
        "--formulation",
        "ib",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("\\ builder: "));
    assert!(text.ends_with("End\n"));
}

#[test]
fn formulate_without_junction_tree_fails_with_hint() {
    let out = run(&["formulate", "--input", &data("triangle.json"), "--formulation", "ib"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("ext-jtree"), "{err}");
}

#[test]
fn verify_reports_pass() {
    let out = run(&["verify", "--input", &data("sos2_5.json"), "--formulation", "ib"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "support_validity: pass, ideal: pass"
    );
}

#[test]
fn transform_triangle() {
    let v = json(&["transform", &data("triangle.json")]);
    assert_eq!(v["extra_continuous"], 1);
    assert_eq!(v["alpha"]["6"], 3);
    let v = json(&["transform", &data("triangle.json"), "--disjoint"]);
    assert_eq!(v["extra_continuous"], 3);
}

#[test]
fn sosk_bounds() {
    let v = json(&["sosk", "--n", "100", "--k", "20"]);
    assert_eq!(v["size"], 25);
    assert_eq!(v["bounds"]["logarithmic"], 62);
}

#[test]
fn sample_is_reproducible() {
    let a = json(&["sample", "--seed", "9", "--sets", "5", "--ground", "8", "--jtree"]);
    let b = json(&["sample", "--seed", "9", "--sets", "5", "--ground", "8", "--jtree"]);
    assert_eq!(a, b);
    assert_eq!(a["sets"].as_array().unwrap().len(), 5);
}

#[test]
fn geometry_subcommands() {
    let v = json(&["geom", "savings", &data("strip5.json")]);
    assert_eq!(v["cont_saved"], 8);
    assert_eq!(v["jtree_cont"], 7);
    assert_eq!(v["disjoint_cont"], 15);
    let v = json(&["geom", "dual", &data("snake9.json")]);
    assert_eq!(v["connected"], true);
    let out = run(&["geom", "savings", &data("touching.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", &data("empty.json")]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent.json"]).status.code(), Some(2));
    let guarded = run(&["--max-ground", "3", "analyze", &data("sos2_5.json")]);
    assert_eq!(guarded.status.code(), Some(3));
}

#[test]
fn pretty_output_is_text() {
    let out = run(&["--pretty", "analyze", &data("path3.json")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("admits_junction_tree"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = bin()
        .args(["analyze", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"sets":[[1,2],[2,3]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["conflict_edges"], 1);
}
