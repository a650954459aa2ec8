use std::process::{Command, Output};

use serde_json::Value;

fn hahn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hahn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn osp_suite_passes_with_json_fields() {
    let out = hahn(&["verify", "osp", "--cutoff", "4", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tool"], "hahn");
    assert_eq!(v["passed"], true);
    assert_eq!(v["config"]["mu1"], "1/3");
    assert_eq!(v["config"]["suites"], serde_json::json!(["osp"]));
    let results = v["suites"][0]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["results"].as_array().unwrap().clone());
    let mut n = 0;
    for r in results {
        n += 1;
        assert!(r["tag"].is_string() && r["budget"].is_u64());
        if r["kind"] == "control" {
            assert_eq!(r["status"], "RESIDUAL");
            assert!(r["max_abs"].as_f64().unwrap() > 0.0);
        }
    }
    assert!(n > 10);
}

#[test]
fn timing_is_opt_in() {
    let plain = String::from_utf8(hahn(&["verify", "sd2", "--output", "json"]).stdout).unwrap();
    assert!(!plain.contains("seconds"));
    let timed = String::from_utf8(hahn(&["verify", "sd2", "--output", "json", "--timing"]).stdout).unwrap();
    assert!(timed.contains("seconds"));
}

#[test]
fn text_output_summarizes() {
    let out = hahn(&["verify", "sd2", "--cutoff", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("== sd2 (pass)"));
    assert!(text.trim_end().ends_with("failed: PASS"));
}

#[test]
fn float_backend_passes() {
    let out = hahn(&[
        "verify",
        "sd2",
        "--backend",
        "float",
        "--cutoff",
        "6",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["suites"][0]["reports"][0]["backend"], "float");
}

#[test]
fn vacuous_window_fails() {
    let out = hahn(&["verify", "osp", "--cutoff", "1", "--budget", "2", "--output", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("VACUOUS"));
}

#[test]
fn bad_configuration_exits_2() {
    for args in [
        &["verify", "osp", "--eps1", "0"][..],
        &["verify", "osp", "--mu1", "abc"],
        &["verify", "howe", "--partition", "3,2"],
        &["verify", "osp", "--cg-csv", "x.csv"],
        &["show", "missing"],
    ] {
        let out = hahn(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn dimension_guard_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_hahn"))
        .args(["verify", "commutant"])
        .env("HAHN_MAX_DIM", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cg_csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cg.csv");
    let out = hahn(&[
        "verify",
        "cg",
        "--cutoff",
        "6",
        "--j-max",
        "2",
        "--cg-csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("j,n12,n1,n2,coefficient"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(!rows.is_empty() && rows.iter().all(|r| r.len() == 5));
    // the lowest vector of j = 0 is the tensor vacuum
    assert_eq!(rows[0][..4], ["0", "0", "0", "0"]);
    assert_eq!(rows[0][4].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn show_prints_canonical_presentation() {
    let out = hahn(&["show", "dual_m1_hahn"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("presentation dual_m1_hahn\n"));
    assert_eq!(text.matches("\nrelation ").count(), 6);
}
