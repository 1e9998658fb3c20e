use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_galois-span"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, value)
}

#[test]
fn kuroda_on_figure_two() {
    let (code, v) = run(&[
        "verify",
        "kuroda",
        "--base",
        &fixture("bouquet2.json"),
        "--group",
        "C2xC6",
        "--voltage",
        &fixture("fig2.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["notes"][0], "kappa(Y) = 117600");
}

#[test]
fn intermediate_kappas_of_figure_two() {
    let (code, v) = run(&["cover", "intermediates", "--base", "bouquet:2", "--voltage", &fixture("fig2.json")]);
    assert_eq!(code, 0);
    let mut kappas: Vec<String> = v["intermediates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["kappa"].as_str().unwrap().to_string())
        .collect();
    kappas.sort_by_key(|k| k.parse::<u64>().unwrap());
    for k in ["1", "3", "6", "294", "300", "117600"] {
        assert!(kappas.iter().any(|x| x == k), "missing {k}");
    }
}

#[test]
fn s3_flags() {
    let (code, v) = run(&["group", "info", "S3"]);
    assert_eq!(code, 0);
    assert_eq!(v["irreducibly_represented"], true);
    assert_eq!(v["exceptional"], false);
}

#[test]
fn q8_is_exceptional() {
    let (_, v) = run(&["group", "info", "Q8"]);
    assert_eq!(v["irreducibly_represented"], true);
    assert_eq!(v["exceptional"], true);
}

#[test]
fn lemma_matrix_sign() {
    let (code, v) = run(&["family", "det-m", "--p", "2", "--s", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["det"], "-1/4");
    assert_eq!(v["nonzero"], true);
    assert_eq!(v["magnitude_matches"], true);
    assert_eq!(v["sign_matches_paper"], false);
}

#[test]
fn s3_relations() {
    let base = fixture("bouquet2.json");
    let volt = fixture("s3.json");
    let (code, v) = run(&["verify", "brauer-kuroda", "--base", &base, "--voltage", &volt]);
    assert_eq!((code, v["passed"].clone()), (0, Value::Bool(true)));
    let (code, v) = run(&["verify", "relation", "--base", &base, "--voltage", &volt, "--relation", &fixture("relation_s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["relations"][0]["report"]["passed"], true);
}

#[test]
fn euler_zero_cover() {
    let (code, v) = run(&["verify", "euler-zero", "--base", &fixture("cycle4.json"), "--voltage", &fixture("cycle4_c3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["left"], "12");
}

#[test]
fn output_is_reproducible() {
    let args = ["selftest", "--seed", "11", "--iters", "4"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&["--jobs", "1", "selftest", "--seed", "11", "--iters", "4"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn out_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cover.json");
    let dot = dir.path().join("cover.dot");
    let (code, _) = run(&[
        "cover",
        "build",
        "--base",
        "bouquet:2",
        "--voltage",
        &fixture("s3.json"),
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("graph"));
}

#[test]
fn failures_and_usage_errors() {
    let (code, v) = run(&["group", "table1"]);
    assert_eq!(code, 1);
    assert_eq!(v["mismatches"], serde_json::json!(["C1"]));
    assert_eq!(run(&["verify", "kuroda", "--base", "bouquet:2"]).0, 2);
    assert_eq!(run(&["family", "det-m", "--p", "4", "--s", "1"]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
}
