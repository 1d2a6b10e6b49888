use std::process::{Command, Output};

fn orum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orum")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = orum(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Header comment, column names, then rows.
fn parse(text: &str) -> (String, Vec<String>, Vec<Vec<String>>) {
    let (comment, rest) = text.split_once('\n').unwrap();
    let mut reader = csv::Reader::from_reader(rest.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (comment.to_string(), header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn analytic_rows() {
    let (comment, header, rows) = parse(&stdout(&["analytic", "--n", "3", "--qz-steps", "11"]));
    assert!(comment.starts_with(&format!("# orum {} {{", env!("CARGO_PKG_VERSION"))));
    assert!(comment.contains("\"command\":\"analytic\""));
    assert_eq!(header, ["n", "q_z", "ic_mixed", "ic_z2"]);
    assert_eq!(rows.len(), 11);
    assert_eq!((num(&rows[0][2]), num(&rows[0][3])), (3.0, 1.0));
    assert!(num(&rows[5][2]).abs() < 1e-12 && num(&rows[5][3]).abs() < 1e-12);
    for k in 0..11 {
        assert_eq!(rows[k][3], rows[10 - k][3], "q_z symmetry at row {k}");
    }
}

#[test]
fn output_file_and_stdout_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.csv");
    let printed = stdout(&["cat-sweep", "--n-max", "3", "--q-steps", "4"]);
    let quiet = stdout(&["cat-sweep", "--n-max", "3", "--q-steps", "4", "--out", path.to_str().unwrap()]);
    assert!(quiet.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    let (_, header, rows) = parse(&printed);
    assert_eq!(header, ["n", "q", "ic_per_use", "is_argmax"]);
    assert_eq!(rows.len(), 8);
    for pair in rows.chunks(2) {
        assert_eq!(pair.iter().filter(|r| r[3] == "true").count(), 1);
    }
}

#[test]
fn optimize_report() {
    let text = stdout(&["optimize", "--n", "1", "--qz", "0.1", "--restarts", "2", "--seed", "4", "--dump-rho"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let ic = v["i_c"].as_f64().unwrap();
    assert!((ic - 0.531004406411).abs() < 1e-9);
    assert_eq!(v["phase"], "maximally_mixed");
    assert_eq!(v["converged"], true);
    assert_eq!(v["config"]["optimizer"]["seed"], 4);
    assert_eq!(v["rho_abs"].as_array().unwrap().len(), 2);
}

#[test]
fn single_point_scan_matches_optimize() {
    let args = ["--n", "1", "--restarts", "2", "--seed", "6"];
    let mut opt = vec!["optimize", "--qu", "0", "--qz", "0.2"];
    opt.extend(args);
    let report: serde_json::Value = serde_json::from_str(&stdout(&opt)).unwrap();
    let mut scan = vec!["scan", "--qu-min", "0", "--qu-max", "0", "--qu-steps", "1"];
    scan.extend(["--qz-min", "0.2", "--qz-max", "0.2", "--qz-steps", "1"]);
    scan.extend(args);
    let (_, header, rows) = parse(&stdout(&scan));
    assert_eq!(header.len(), 11);
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert_eq!(num(&row[4]), report["i_c"].as_f64().unwrap());
    assert_eq!(row[7], report["phase"].as_str().unwrap());
    assert_eq!(num(&row[8]), report["iterations"].as_f64().unwrap());
    assert_eq!(row[9], "NA");
}

#[test]
fn code_dynamics_rows() {
    let (comment, header, rows) =
        parse(&stdout(&["code-dynamics", "--code", "classical", "--n", "3", "--qu", "0", "--qz", "0.1", "--t", "3"]));
    assert!(comment.contains("\"qec\":true"));
    assert_eq!(header, ["t", "i_c", "purity"]);
    assert_eq!(rows.len(), 4);
    assert_eq!(num(&rows[0][1]), 1.0);
    assert!(rows[1..].iter().all(|r| num(&r[1]) > 0.5));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"n": 2, "qz-steps": 3, "qz-max": 0.5}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let (_, _, rows) = parse(&stdout(&["--config", c, "analytic"]));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[0] == "2"));
    let (_, _, rows) = parse(&stdout(&["--config", c, "analytic", "--n", "4"]));
    assert!(rows.iter().all(|r| r[0] == "4"));
}

#[test]
fn failures_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    for args in [
        vec!["analytic", "--qz-max", "2"],
        vec!["optimize", "--n", "7"],
        vec!["cat-sweep", "--n-max", "9"],
        vec!["code-dynamics", "--n", "2"],
        vec!["scan", "--threads", "0"],
        vec!["--config", bad.to_str().unwrap(), "analytic"],
        vec!["--config", "/nonexistent/c.json", "analytic"],
        vec!["frobnicate"],
    ] {
        let out = orum(&args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}
