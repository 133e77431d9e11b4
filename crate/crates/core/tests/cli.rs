use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bchfam(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bchfam"));
    cmd.args(args).env("SOURCE_DATE_EPOCH", "1700000000");
    match cache {
        Some(p) => cmd.env("BCHFAM_CACHE", p),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn family_run_passes() {
    let out = bchfam(&["family", "run", "T2.1", "--param", "3"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("[21, 11]_2, BCH 6, exact d = 6, distance-optimal, PASS"));
    let v = json(&out);
    assert_eq!(v["records"][0]["n"], 21);
    assert_eq!(v["records"][0]["certificate"]["verdict"], "distance-optimal");
    assert_eq!(v["summary"]["pass"], true);
}

#[test]
fn family_sweep_and_list() {
    let out = bchfam(&["family", "run", "T2.1", "--max-n", "400", "--exact-max-n", "100"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(json(&out)["records"].as_array().unwrap().len() >= 2);
    let out = bchfam(&["family", "list"], None);
    assert_eq!(json(&out)["records"].as_array().unwrap().len(), 20);
}

#[test]
fn degenerate_build() {
    let out = bchfam(&["build", "--q", "2", "--n", "1"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["records"][0]["k"], 1);
}

#[test]
fn usage_errors_name_the_flag() {
    let out = bchfam(&["build", "--q", "two", "--n", "3"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--q"));
    let out = bchfam(&["build", "--q", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--n"));
    let out = bchfam(&["family", "run", "T99"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_and_certify() {
    let out = bchfam(&["analyze", "--family", "T5.1", "--param", "2"], None);
    let v = json(&out);
    let rec = &v["records"][0];
    assert_eq!(rec["distance"]["d"], 4);
    assert_eq!(rec["weight_distribution"]["counts"][4], "120");
    let out = bchfam(&["certify", "--q", "2", "--n", "21", "--k", "11", "--d", "6"], None);
    let v = json(&out);
    assert_eq!(v["records"][0]["certificate"]["lhs"], "3198976");
    assert_eq!(v["records"][0]["certificate"]["rhs"], "2097152");
}

#[test]
fn table_two_exit_code_tracks_claims() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t2.json");
    let out = bchfam(&["table", "--id", "2", "--out", path.to_str().unwrap()], None);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let pass = v["summary"]["pass"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if pass { 0 } else { 1 }));
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 10);
    let r121 = records.iter().find(|r| r["n"] == 121).unwrap();
    assert_eq!(r121["k"], 61);
    assert_eq!(r121["distance"]["d"], 22);
    assert_eq!(r121["best_known"]["d"], 23);
}

#[test]
fn compare_against_reference() {
    let dir = tempfile::tempdir().unwrap();
    let bounds = dir.path().join("b.csv");
    std::fs::write(&bounds, "q,n,k,d_best\n3,121,61,23\n7,60,50,6\n").unwrap();
    let out = bchfam(&["compare", "--bounds", bounds.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let gaps: Vec<(u64, i64)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| !r["gap"].is_null())
        .map(|r| (r["n"].as_u64().unwrap(), r["gap"].as_i64().unwrap()))
        .collect();
    assert!(gaps.contains(&(121, 1)) && gaps.contains(&(60, 1)), "{gaps:?}");

    std::fs::write(&bounds, "").unwrap();
    let out = bchfam(&["compare", "--bounds", bounds.to_str().unwrap()], None);
    assert_eq!(json(&out)["summary"]["note"], "no reference data");

    std::fs::write(&bounds, "q,n,k,d_best\n3,121,61,23\n3,121,61,24\n").unwrap();
    let out = bchfam(&["compare", "--bounds", bounds.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"));
}

#[test]
fn reports_are_deterministic_and_cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let args = ["analyze", "--family", "T4.B", "--param", "2", "--shorten", "3"];
    let plain = bchfam(&args, None);
    let first = bchfam(&args, Some(&cache));
    let lines = std::fs::read_to_string(&cache).unwrap().lines().count();
    assert_eq!(lines, 1);
    let second = bchfam(&args, Some(&cache));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
    assert!(json(&plain)["records"] == json(&first)["records"]);
    assert!(first.stdout == second.stdout);
}

#[test]
fn csv_view() {
    let out = bchfam(&["--format", "csv", "cosets", "--q", "5", "--n", "62", "--negacyclic"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "ambient,elems,q,record,rep,size");
    assert!(text.lines().any(|l| l == "124,31,5,coset,31,1"));
}
