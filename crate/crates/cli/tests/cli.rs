//! End-to-end runs of the binary: verdict JSON on stdout, exit code 0
//! for verdicts and 2 for input errors, deterministic generation, and
//! batch processing.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};
use tempfile::NamedTempFile;

fn domcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn stdout_json(output: &Output) -> Vec<Value> {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout lines are JSON"))
        .collect()
}

const C4: &str = "c four-cycle\np 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";
const P6: &str = "p 6 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n";
const P7: &str = "p 7 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\n";
const K2: &str = "p 2 1\ne 0 1\n";

#[test]
fn recognize_reports_membership_with_exit_zero() {
    let c4 = write_file(C4);
    let out = domcover(&["recognize", "--class", "B", c4.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["member"], Value::Bool(true));
    assert_eq!(reports[0]["class"], "B");
    assert_eq!(reports[0]["certificate"]["type"], "witness_gamma_set");

    let p6 = write_file(P6);
    let out = domcover(&["recognize", "--class", "Cgb", p6.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["member"], Value::Bool(false));
    assert_eq!(reports[0]["certificate"]["type"], "violated_condition");
}

#[test]
fn malformed_input_exits_two() {
    let bad = write_file("p 2 1\ne zero one\n");
    let out = domcover(&["recognize", "--class", "B", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn oracle_reports_all_three_numbers() {
    let k2 = write_file(K2);
    let out = domcover(&["oracle", k2.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    let oracle = &reports[0]["oracle"];
    assert_eq!(oracle["gamma"]["value"], 1);
    assert_eq!(oracle["beta"]["value"], 1);
    assert_eq!(oracle["alpha"]["value"], 1);

    let c4 = write_file(C4);
    let out = domcover(&["oracle", c4.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["oracle"]["gamma"]["value"], 2);
    assert_eq!(reports[0]["oracle"]["beta"]["value"], 2);
    assert_eq!(reports[0]["oracle"]["alpha"]["value"], 2);
}

#[test]
fn oracle_size_cap() {
    let mut big = String::from("p 30 29\n");
    for i in 0..29 {
        big.push_str(&format!("e {} {}\n", i, i + 1));
    }
    let f = write_file(&big);
    let out = domcover(&["oracle", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size cap"));

    let out = domcover(&["oracle", "--cap", "32", f.path().to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn tree_gen_is_deterministic() {
    let first = domcover(&["tree", "gen", "--steps", "5", "--seed", "7"]);
    let second = domcover(&["tree", "gen", "--steps", "5", "--seed", "7"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let other = domcover(&["tree", "gen", "--steps", "5", "--seed", "8"]);
    assert_ne!(first.stdout, other.stdout);

    let reports = stdout_json(&first);
    assert_eq!(reports[0]["member"], Value::Bool(true));
    assert!(reports[0]["tree"]["script"].as_str().is_some());
    assert!(reports[0]["stats"].is_null() || reports[0].get("stats").is_none());
}

#[test]
fn tree_check_and_deconstruct() {
    let p7 = write_file(P7);
    let out = domcover(&["tree", "check", p7.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["member"], Value::Bool(true));

    let p6 = write_file(P6);
    let out = domcover(&["tree", "deconstruct", p6.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["member"], Value::Bool(false));

    let out = domcover(&["tree", "deconstruct", p7.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["member"], Value::Bool(true));
    let script = reports[0]["tree"]["script"].as_str().unwrap();
    assert_eq!(script.lines().count(), 3);
}

#[test]
fn grid_command() {
    let hash = write_file("V 1 0 3\nV 2 0 3\nH 1 0 3\nH 2 0 3\n");
    let out = domcover(&["grid", hash.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["member"], Value::Bool(true));
    assert_eq!(reports[0]["grid"]["vertical_count"], 2);
    assert_eq!(reports[0]["grid"]["crossing_count"], 4);

    let plus = write_file("# plus sign\nV 0 -1 1\nH 0 -1 1\n");
    let out = domcover(&["grid", plus.path().to_str().unwrap()]);
    assert_eq!(stdout_json(&out)[0]["member"], Value::Bool(true));

    let overlap = write_file("H 0 0 2\nV 1 -1 1\nH 0 2 4\n");
    let out = domcover(&["grid", overlap.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn bench_scaling() {
    let out = domcover(&["bench", "--sizes", "16,64"]);
    let reports = stdout_json(&out);
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["member"] == Value::Bool(true)));
    let first = reports[0]["stats"]["pair_checks"].as_u64().unwrap();
    let second = reports[1]["stats"]["pair_checks"].as_u64().unwrap();
    let ratio = second as f64 / first as f64;
    assert!((8.0..=32.0).contains(&ratio), "ratio {ratio}");

    let out = domcover(&["bench", "--sizes", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn batch_processing_keeps_input_order() {
    let c4 = write_file(C4);
    let p6 = write_file(P6);
    let p7 = write_file(P7);
    let out = domcover(&[
        "recognize",
        "--class",
        "Cgb",
        "--jobs",
        "3",
        c4.path().to_str().unwrap(),
        p6.path().to_str().unwrap(),
        p7.path().to_str().unwrap(),
    ]);
    let reports = stdout_json(&out);
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[0]["member"], Value::Bool(true));
    assert_eq!(reports[1]["member"], Value::Bool(false));
    assert_eq!(reports[2]["member"], Value::Bool(true));

    // A bad file in the batch flips the exit code but the good files
    // still produce verdicts.
    let bad = write_file("p 1 oops\n");
    let out = domcover(&[
        "recognize",
        "--class",
        "Cgb",
        c4.path().to_str().unwrap(),
        bad.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).lines().count(),
        1,
        "the valid file still reports"
    );
}

#[test]
fn sparse_labels_are_recorded() {
    let sparse = write_file("p 4 4\ne 10 20\ne 20 30\ne 30 40\ne 40 10\n");
    let out = domcover(&["recognize", "--class", "B", sparse.path().to_str().unwrap()]);
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["member"], Value::Bool(true));
    assert_eq!(
        reports[0]["labels"],
        serde_json::json!([10, 20, 30, 40])
    );
}
