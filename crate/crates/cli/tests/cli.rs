use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use fuschar::corpus::CorpusReport;
use fuschar::reproduce::Outcome;
use fuschar::verify::{GroupCaseReport, VerificationReport};

fn fuschar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuschar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// `parse(serialize(x)) == x`, compared through the JSON value.
fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned>(value: &Value) {
    let parsed: T = serde_json::from_value(value.clone()).expect("report parses");
    assert_eq!(&serde_json::to_value(&parsed).unwrap(), value);
}

const C8_MERGE: &str = r#"{"group":{"kind":"builtin","name":"C8"},"p":2,"merges":[["g0^2","g0^6"]]}"#;
const S4: &str = r#"{"kind":"permutation","generators":[[1,2,3,0],[1,0,2,3]]}"#;

#[test]
fn example27_is_a_counterexample_to_the_identity() {
    let out = fuschar(&["paper", "--item", "example27"]);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict = counterexample"));
}

#[test]
fn table3_matches_at_five() {
    let out = fuschar(&["--json", "paper", "--item", "table3", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], Value::Bool(true));
    round_trip::<Outcome>(&v);
}

#[test]
fn builtin_corpus_passes() {
    let out = fuschar(&["--json", "corpus", "--builtin"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["errors"], 0);
    round_trip::<CorpusReport>(&v);
}

#[test]
fn merged_c8_fusion_exits_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c8.json", C8_MERGE);
    let out = fuschar(&["--json", "verify-fusion", "-f", &f]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["lhs_det"], "4194304");
    assert_eq!(v["rhs_product"], "2097152");
    round_trip::<VerificationReport>(&v);
}

#[test]
fn s4_group_case_verifies() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s4.json", S4);
    for p in ["2", "3"] {
        let out = fuschar(&["--json", "verify-group", "-g", &g, "-p", p]);
        assert_eq!(code(&out), 0, "p = {p}");
        round_trip::<GroupCaseReport>(&stdout_json(&out));
    }
}

#[test]
fn char_table_restricts_to_a_subgroup() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s4.json", S4);
    let out = fuschar(&["char-table", "-g", &g, "--restrict-to", "g0"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stdout.is_empty());
}

#[test]
fn bad_generator_exits_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.json", r#"{"kind":"permutation","generators":[[1,0,2],[0,0,1]]}"#);
    let out = fuschar(&["verify-group", "-g", &g, "-p", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator 1"));
}

#[test]
fn malformed_json_reports_position() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "broken.json", "{\n  \"p\": 2,\n  \"merges\": [\n}");
    let out = fuschar(&["verify-fusion", "-f", &f]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&fuschar(&["paper", "--item", "table9"])), 2);
    assert_eq!(code(&fuschar(&["paper", "--item", "nope"])), 2);
    assert_eq!(code(&fuschar(&["verify-group", "-p", "2"])), 2);
    assert_eq!(code(&fuschar(&["corpus"])), 2);
    let missing = Path::new("/nonexistent/spec.json").to_str().unwrap();
    assert_eq!(code(&fuschar(&["verify-fusion", "-f", missing])), 2);
}

#[test]
fn large_constructions_are_gated() {
    let out = fuschar(&["paper", "--item", "table2", "--p", "7"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--large"));
}

#[test]
fn corpus_directory_mixes_groups_and_fusions() {
    let dir = TempDir::new().unwrap();
    write(&dir, "a_s4.json", S4);
    write(&dir, "b_c8.json", C8_MERGE);
    let out = fuschar(&["--json", "corpus", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["failed"], 1);
    round_trip::<CorpusReport>(&v);
}

#[test]
fn seed_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c8.json", C8_MERGE);
    let a = fuschar(&["verify-fusion", "-f", &f, "--seed", "7"]);
    let b = fuschar(&["verify-fusion", "-f", &f, "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}
