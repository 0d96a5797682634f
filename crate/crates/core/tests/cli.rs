use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn popmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popmatch"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const G1_PRIME: &str =
    r#"{"version":1,"kind":"reduced","m":5,"w1":2,"w2":1,"f1":[0,0],"s1":[1,2],"f2":[1,2],"s2":[3,4]}"#;
const PATH_FULL: &str =
    r#"{"version":1,"kind":"full","m":3,"w1":2,"w2":1,"prefs_a1":[[0,1,2]],"prefs_a2":[[1,0,2]]}"#;

#[test]
fn check_reports_witness_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g1.json", G1_PRIME);
    let dot = dir.path().join("g.dot");
    let out = popmatch(&["check", "--in", &input, "--dot", dot.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["weights_dominant"], true);
    assert!(v["matching"].is_null());
    assert_eq!(v["witness"]["kind"], "G1");
    assert_eq!(v["witness"]["vertices"], serde_json::json!([3, 1, 0, 2, 4]));
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("graph"));
}

#[test]
fn check_and_oracle_on_path_instance() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "path.json", PATH_FULL);
    let v = json(&popmatch(&["check", "--in", &input]));
    assert_eq!(v["feasible"], true);
    assert_eq!(v["matching"], serde_json::json!([0, 1]));
    let v = json(&popmatch(&["oracle", "--in", &input]));
    assert_eq!(v["popular_exists"], true);
    assert_eq!(v["matching"], serde_json::json!([0, 1]));
    assert_eq!(v["matchings_enumerated"], 6);
}

#[test]
fn census_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g1.json", G1_PRIME);
    let v = json(&popmatch(&["census", "--in", &input]));
    assert_eq!(v["z_g1prime"], 1);
    assert_eq!(v["witness_kind"], "g1");
    assert_eq!(v["has_cycle"], false);
}

#[test]
fn bounds_output_and_errors() {
    let v = json(&popmatch(&["bounds", "--n1", "2", "--n2", "2", "--m", "5", "--c", "5"]));
    assert_eq!(v["ez_low"]["exact"], "2/125");
    assert_eq!(v["ez_high"]["exact"], "2/5");
    assert_eq!(v["cheby_pr_z0"]["exact"], "1");
    let out = popmatch(&["bounds", "--n1", "2", "--n2", "2", "--m", "5", "--c", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = popmatch(&["bounds", "--n1", "2", "--n2", "2", "--m", "5", "--c", "two"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"version":1,"kind":"reduced","m":5,"w1":2,"w2":1,"f1":[0,0],"s1":[0,2],"f2":[1,2],"s2":[3,4]}"#);
    assert_eq!(popmatch(&["check", "--in", &bad]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.json", r#"{"version":1,"kind":"full","m":3,"w1":2,"w2":1,"prefs_a1":[[0,1,2]],"prefs_a2":[[1,0,2]],"extra":1}"#);
    assert_eq!(popmatch(&["check", "--in", &unknown]).status.code(), Some(2));
    let reduced = write(dir.path(), "g1.json", G1_PRIME);
    assert_eq!(popmatch(&["oracle", "--in", &reduced]).status.code(), Some(2));

    let out = dir.path().join("big.json");
    let gen = popmatch(&["gen", "--n1", "5", "--n2", "5", "--m", "20", "--seed", "1", "--kind", "full", "--out", out.to_str().unwrap()]);
    assert!(gen.status.success());
    let capped = popmatch(&["oracle", "--in", out.to_str().unwrap(), "--cap", "1000"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));

    let bad_target = popmatch(&["threshold", "--n1", "1", "--n2", "1", "--trials", "10", "--seed", "1", "--target", "1.5"]);
    assert_eq!(bad_target.status.code(), Some(2));
    assert_eq!(popmatch(&["gen", "--n1", "2", "--n2", "2", "--m", "4", "--seed", "1", "--out", "x"]).status.code(), Some(2));
    assert_eq!(popmatch(&["gen", "--n1", "2", "--n2", "2", "--m", "9", "--seed", "1", "--w1", "1", "--w2", "1", "--out", "x"]).status.code(), Some(2));
}

#[test]
fn non_dominant_weights_are_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.json", &G1_PRIME.replace(r#""w1":2"#, r#""w1":3"#).replace(r#""w2":1"#, r#""w2":2"#));
    let v = json(&popmatch(&["check", "--in", &input]));
    assert_eq!(v["weights_dominant"], false);
}

#[test]
fn sweep_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = popmatch(&[
        "sweep", "--n1", "4", "--n2", "4", "--m-list", "40,5,40", "--trials", "30", "--seed", "1",
        "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("m = 5"));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("n1,n2,m,trials,seed,p_hat,ci_low,ci_high"));
    assert_eq!(lines[1], "4,4,5,30,1,,,,,,,,,,,,,,,");
    assert_eq!(lines[2], lines[3]);

    let empty = dir.path().join("e.csv");
    popmatch(&["sweep", "--n1", "4", "--n2", "4", "--m-list", "", "--trials", "3", "--seed", "1", "--out", empty.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&empty).unwrap().lines().count(), 1);
}
