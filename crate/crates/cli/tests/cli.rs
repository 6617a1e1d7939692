use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzeta"))
        .args(args)
        .env_remove("HZETA_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn constants_table_is_deterministic() {
    let args = ["constants", "--family", "gammaA", "--k", "2..3", "--m", "0..2", "--digits", "15"];
    let a = hzeta(&args);
    let b = hzeta(&["--threads", "1", "constants", "--family", "gammaA", "--k", "2..3", "--m", "0..2", "--digits", "15"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 6);
    assert!(stdout(&a).contains("gammaA(k=2,m=0)   1.02587476785559"));
}

#[test]
fn value_truncates_to_requested_digits() {
    let o = hzeta(&["value", "--key", "gammaA(k=1,m=0)", "--digits", "12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.989055995327\n");
}

#[test]
fn exact_value() {
    let o = hzeta(&["value", "--key", "zetaA_neg_even(k=2,m=1)", "--exact"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1/8\n");
}

#[test]
fn json_rows_have_schema() {
    let o = hzeta(&["constants", "--family", "gammaO", "--m", "0,6", "--digits", "14", "--format", "json"]);
    assert!(o.status.success());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert_eq!(r["family"], "gammaO");
        assert!(r["params"]["m"].is_u64());
        assert_eq!(r["digits"], 14);
        assert!(r["value"].is_string());
        assert!(r["error_bound"].is_string());
    }
    assert_eq!(rows[1]["value"], "0.11653807141932");
}

#[test]
fn csv_has_header() {
    let o = hzeta(&["constants", "--family", "gammaA", "--k", "2", "--m", "0", "--digits", "10", "--format", "csv"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("family,params,digits,value,error_bound"));
    assert!(lines.next().unwrap().starts_with("gammaA,k=2;m=0,10,1.025874767,"));
}

#[test]
fn cache_warm_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["constants", "--family", "gammaHminus", "--m", "0..3", "--digits", "20", "--cache-dir", d];
    let cold = hzeta(&args);
    assert!(cold.status.success());
    let file = dir.path().join("constants.jsonl");
    let stored = fs::read_to_string(&file).unwrap();
    assert_eq!(stored.lines().count(), 4);
    let warm = hzeta(&args);
    assert_eq!(stdout(&cold), stdout(&warm));
    assert_eq!(fs::read_to_string(&file).unwrap(), stored);
    let fewer = hzeta(&["value", "--key", "gammaHminus(m=2)", "--digits", "12", "--cache-dir", d]);
    assert!(stdout(&cold).contains(stdout(&fewer).trim()));
}

#[test]
fn corrupt_cache_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("constants.jsonl"), "not json\n").unwrap();
    let o = hzeta(&["value", "--key", "gammaH(m=0)", "--digits", "12", "--cache-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let stored = fs::read_to_string(dir.path().join("constants.jsonl")).unwrap();
    assert!(!stored.contains("not json"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hzeta(&["constants", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(hzeta(&["value", "--key", "gammaH(m=0)", "--digits", "3"]).status.code(), Some(2));
    assert_eq!(hzeta(&["value", "--key", "gammaH(m=0)", "--exact"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_detects_fault() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.txt");
    let r = report.to_str().unwrap();
    let ok = hzeta(&["verify", "--suite", "identities", "--digits", "20", "--report", r]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(report.exists());
    let bad = hzeta(&["verify", "--suite", "identities", "--digits", "20", "--report", r, "--inject-fault", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}
