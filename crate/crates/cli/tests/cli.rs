use std::path::PathBuf;
use std::process::{Command, Output};

use entloc_cli::report::strip_timings;
use serde_json::Value;

fn el(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_el")).args(args).output().expect("run el")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("el-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn entry_locus_report_to_file() {
    let path = tmp("r.json");
    let out = el(&["entry-locus", "--variety", "scroll12", "--seed", "7", "--field", "fp:auto",
                   "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["gamma"], 1);
    assert_eq!(r["reduced_degree"], 2);
    assert_eq!(r["type_irreducibility"], "I");
    assert_eq!(r["seed"], 7);
}

#[test]
fn reports_are_reproducible_up_to_timings() {
    let args = ["entry-locus", "--variety", "delpezzo4", "--seed", "11"];
    let (mut a, mut b) = (json_of(&el(&args)), json_of(&el(&args)));
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(a, b);
}

#[test]
fn elliptic_quartic_has_four_cones() {
    let out = el(&["segre", "--curve", "elliptic4", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["count"], 4);
    assert_eq!(r["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(el(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(el(&["entry-locus", "--variety", "no_such_surface"]).status.code(), Some(2));
    assert_eq!(el(&["entry-locus", "--variety", "scroll12", "--field", "Fp:4"]).status.code(), Some(2));
    assert_eq!(el(&["gb", "--input", "/nonexistent", "--order", "lex"]).status.code(), Some(2));
    let bad = tmp("bad.var");
    std::fs::write(&bad, "ring x y over Q\ngen: x*y +\n").unwrap();
    assert_eq!(el(&["gb", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(el(&["gb", "--input", bad.to_str().unwrap(), "--order", "revlex"]).status.code(), Some(2));
}

#[test]
fn file_field_conflict_is_a_usage_error() {
    let f = tmp("cubic.var");
    std::fs::write(&f, "ring x0 .. x3 over Fp:1000003\ngen: x0*x2 - x1^2\ngen: x1*x3 - x2^2\ngen: x0*x3 - x1*x2\n").unwrap();
    let p = f.to_str().unwrap();
    assert_eq!(el(&["secant-dims", "--variety", p, "--field", "Q"]).status.code(), Some(2));
    let out = el(&["secant-dims", "--variety", p, "--max-s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let dims: Vec<u64> = json_of(&out)["profile"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 3]);
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = el(&["entry-locus", "--variety", "veronese_proj4", "--max-steps", "3"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn gb_of_a_file() {
    let f = tmp("twisted.var");
    // z > y > x: the generators already form the reduced lex basis
    std::fs::write(&f, "ring z y x over Q\ngen: y - x^2\ngen: z - x^3 + y*x\n").unwrap();
    let out = el(&["gb", "--input", f.to_str().unwrap(), "--order", "lex"]);
    assert_eq!(out.status.code(), Some(0));
    let mut lines: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    lines.sort();
    assert_eq!(lines, ["y - x^2", "z"]);
}

#[test]
fn decomp_and_pair_segre() {
    let r = json_of(&el(&["decomp", "--variety", "rnc(3)", "--seed", "2"]));
    assert_eq!(r["count"], 1);
    assert_eq!(r["result"], "finite");
    let out = el(&["pair-segre", "--y", "rnc(3)", "--t", "elliptic4", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["equal"], false);
}

#[test]
fn catalog_lists_every_key() {
    let out = el(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for key in ["scroll12", "delpezzo4", "k3_23", "rnc(3)", "elliptic4", "veronese5"] {
        assert!(text.contains(key), "{key} missing");
    }
}
