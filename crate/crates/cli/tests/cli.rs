use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn trace_lab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trace-lab"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn bounds_printed_exponents() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(&["bounds", "--r", "2", "--alpha", "0.5"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,r,alpha,mu,lambda,lower_exponent,upper_exponent"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("1024,2,0.5,1.70669505,0.584962501,1.169925,"), "{row}");
    assert!(row.contains("1.706695") && row.contains("1.169925"));
}

#[test]
fn bounds_full_window() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(&["bounds", "--r", "1", "--alpha", "1"], dir.path());
    let row = stdout(&out).lines().nth(1).unwrap().to_owned();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(&fields[..6], ["1024", "1", "1", "1", "1", "1"]);
}

#[test]
fn bounds_grid_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(
        &["bounds", "--r", "1,1.25,1.5,1.75,2", "--alpha", "0.1,0.25,0.4142,0.6,1"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 26);
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 7));
}

#[test]
fn bounds_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(
        &["bounds", "--n", "64,4096", "--r", "1.5", "--alpha", "0.5", "--format", "json", "--output", "b.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let rows = read_json(&dir.path().join("b.json"));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        for key in ["mu", "lambda", "lower_exponent", "upper_exponent"] {
            assert!(row[key].as_f64().unwrap().is_finite());
        }
        assert!(row["trace_lower"]["vacuous"].is_boolean());
    }
}

#[test]
fn missing_flag_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(&["construct", "--mode", "trace-ub", "--n", "1024"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Usage"));
}

#[test]
fn sparse_kk_needs_clique_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(&["construct", "--mode", "sparse-kk", "--n", "64", "--r", "1.2", "--alpha", "0.5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_sparse_kk_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(
        &[
            "construct", "--mode", "sparse-kk", "--n", "4096", "--k", "4", "--x", "8", "--alpha", "0.5", "--r", "1.2",
            "--relaxed", "--seed", "7", "--wp-trials", "500", "--out-dir", "run",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_json(&dir.path().join("run/report.json"));
    assert_eq!(report["status"], "ok");
    assert_eq!(report["e1_holds"], true);
    assert_eq!(report["edge_disjoint"], true);
    let shadows = report["shadow_checks"].as_array().unwrap();
    assert_eq!(shadows.len(), 5);
    assert!(shadows.iter().all(|c| c["holds"] == true));
    assert_eq!(report["wp"]["holds"], true);

    let family = std::fs::read_to_string(dir.path().join("run/family.txt")).unwrap();
    let header = family.lines().next().unwrap();
    assert_eq!(header, format!("4096 {}", report["family_size"]));
    assert!(family.lines().skip(1).all(|l| l.split(' ').count() == 4));
}

#[test]
fn construct_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(
        &[
            "construct", "--mode", "sparse-kk", "--n", "20", "--k", "4", "--x", "8", "--ell", "50", "--alpha", "0.5",
            "--r", "1.2", "--relaxed", "--max-retries", "2",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let report = read_json(&dir.path().join("report.json"));
    assert_eq!(report["status"], "failed");
    assert_eq!(report["attempts"], 3);
    assert!(!dir.path().join("family.txt").exists());
}

#[test]
fn construct_trace_ub_small() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(
        &["construct", "--mode", "trace-ub", "--n", "24", "--r", "2", "--alpha", "0.5", "--x", "6", "--relaxed"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_json(&dir.path().join("report.json"));
    assert_eq!(report["x"], 6);
    assert_eq!(report["sampled"]["max_trace_ok"], true);

    let analyzed = trace_lab(&["analyze", "family.txt", "--trace", "6", "--sample-trace", "300"], dir.path());
    assert!(analyzed.status.success(), "{}", stderr(&analyzed));
    let stats: Value = serde_json::from_str(&stdout(&analyzed)).unwrap();
    assert_eq!(stats["down_closed"], true);
    assert_eq!(stats["vc"], 6);
    assert_eq!(stats["trace"]["value"], 64);
    assert_eq!(stats["sampled_trace"]["within_upper_bound"], true);
}

#[test]
fn construct_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| {
        vec![
            "construct", "--mode", "sparse-kk", "--n", "512", "--k", "4", "--x", "8", "--alpha", "0.5", "--r", "1.2",
            "--relaxed", "--seed", "0x2A", "--wp-trials", "200", "--out-dir", out,
        ]
    };
    assert!(trace_lab(&args("a"), dir.path()).status.success());
    assert!(trace_lab(&args("b"), dir.path()).status.success());
    for file in ["family.txt", "report.json"] {
        let a = std::fs::read(dir.path().join("a").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file}");
    }
}

#[test]
fn verify_sauer_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(&["verify", "--suite", "sauer", "--output", "r.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS sauer-perles-shelah\n"));
    let reports = read_json(&dir.path().join("r.json"));
    let report = &reports[0];
    for key in ["property", "params", "expected", "observed", "pass"] {
        assert!(report.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_all_small() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(&["verify", "--suite", "all", "--max-n", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().last().unwrap().ends_with(", 0 failed"));
}

#[test]
fn verify_unknown_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = trace_lab(&["verify", "--suite", "no-such-suite"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn analyze_power_set_of_three() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p3.txt"), "3 8\n\n0\n1\n2\n0 1\n0 2\n1 2\n0 1 2\n").unwrap();
    let out = trace_lab(&["analyze", "p3.txt", "--shadow", "2", "--wp", "2"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let stats: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(stats["vc"], 3);
    assert_eq!(stats["m"], 8);
    assert_eq!(stats["shadow"]["value"], 3);
    assert_eq!(stats["wp"]["value"], 4);
}

#[test]
fn analyze_malformed_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "4 2\n0 1\n2 x\n").unwrap();
    let out = trace_lab(&["analyze", "bad.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn bad_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_trace-lab"))
        .args(["bounds", "--r", "2", "--alpha", "0.5"])
        .env("TRACE_LAB_THREADS", "0")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_power_set_family_sampled() {
    let dir = tempfile::tempdir().unwrap();
    let built = trace_lab(
        &["construct", "--mode", "trace-ub", "--n", "1024", "--r", "2", "--alpha", "0.5", "--trace-trials", "10"],
        dir.path(),
    );
    assert!(built.status.success(), "{}", stderr(&built));
    assert_eq!(read_json(&dir.path().join("report.json"))["x"], 7);
    let out = trace_lab(&["analyze", "family.txt", "--sample-trace", "100000", "--r", "2"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let stats: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sampled = &stats["sampled_trace"];
    assert_eq!(sampled["summary"]["trials"], 100_000);
    assert!(sampled["max"].as_f64().unwrap() <= sampled["upper_bound"].as_f64().unwrap());
    assert_eq!(sampled["within_upper_bound"], true);
}
