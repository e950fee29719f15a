use std::fs;
use std::process::{Command, Output};

use amd_core::certificate::{validate_certificate, Certificate, Method, Verdict};

fn amd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amd")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decide_prints_a_valid_certificate() {
    let o = amd(&["decide", "6", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let c = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!((c.verdict, c.method, c.witness), (Verdict::NotExistSelfRepeat, Some(Method::PrimeWitness), Some(2)));
    validate_certificate(&c).unwrap();
}

#[test]
fn decide_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = amd(&["decide", "7", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Exists Known_k2");
    let c = Certificate::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(c.verdict, Verdict::Exists);
}

#[test]
fn unknown_verdict_exits_two() {
    let o = amd(&["decide", "3", "3", "--no-literature"]);
    assert_eq!(o.status.code(), Some(2));
    let c = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!(c.verdict, Verdict::Unknown);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["decide", "1", "5"][..],
        &["decide"],
        &["sweep", "--d", "6..13", "--k", "3..10"],
        &["sweep", "--d", "6-8", "--k", "3..10"],
        &["conjecture", "--i", "2..5", "--k", "5..6"],
        &["frobnicate"],
    ] {
        assert_eq!(amd(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn sweep_is_sorted_and_deterministic() {
    let args = ["sweep", "--d", "6..8", "--k", "3..40", "--no-timing", "--jobs", "2"];
    let a = stdout(&amd(&args));
    assert_eq!(a, stdout(&amd(&args)));
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("d,k,verdict,method,witness,runtime_ms"));
    let keys: Vec<(u64, u64)> = lines
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap().parse().unwrap(), f.next().unwrap().parse().unwrap())
        })
        .collect();
    assert_eq!(keys.len(), 3 * 38);
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert!(a.contains("6,11,NotExistSelfRepeat,PrimeWitness,2,0"));
}

#[test]
fn conjecture_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = amd(&["conjecture", "--i", "3..4", "--k", "4..6", "--out", dir.path().to_str().unwrap(), "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["cells"], 6);
    assert_eq!(summary["inconsistent"], 0);
    // (3, 4) and (4, 6) split in two.
    assert_eq!(summary["two_factors"], 2);
    assert_eq!(summary["products_verified"], 2);
    assert_eq!(fs::read_to_string(dir.path().join("reports.jsonl")).unwrap().lines().count(), 6);
}

#[test]
fn empty_conjecture_range() {
    let o = amd(&["conjecture", "--i", "5..4", "--k", "5..6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"cells\": 0"));
}

#[test]
fn factor_command() {
    let o = amd(&["factor", "--i", "3", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Reducible"), "{text}");
    assert!(text.contains("FullFactorization"), "{text}");
}

#[test]
fn oracle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l3.txt");
    let p = path.to_str().unwrap();
    assert_eq!(amd(&["oracle", "gen", "--d", "3", "--out", p]).status.code(), Some(0));
    let o = amd(&["oracle", "check", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12 self-repeats"));
    let o = amd(&["oracle", "report", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));

    // Dropping an arc breaks diregularity and the defining equation.
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let row = lines.iter().position(|l| !l.starts_with('#') && l.split_whitespace().count() == 3 && l != &lines[0]).unwrap();
    let kept: Vec<&str> = lines[row].split_whitespace().take(2).collect();
    lines[row] = kept.join(" ");
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert_eq!(amd(&["oracle", "check", p]).status.code(), Some(3));
    assert_eq!(amd(&["oracle", "report", p]).status.code(), Some(3));
}

#[test]
fn oracle_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3 1 2\n0\n2\n0\n").unwrap();
    assert_eq!(amd(&["oracle", "check", path.to_str().unwrap()]).status.code(), Some(1));
}
