use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_iontrap-dfs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn error_vs_n_is_deterministic_and_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let common = ["error-vs-n", "--n-list", "1,2,3,17..20", "--steps", "40"];
    let out = run(&[&common[..], &["--out", a.to_str().unwrap()]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&[&common[..], &["--serial", "--out", b.to_str().unwrap()]].concat());
    assert!(out.status.success());
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());

    let text = String::from_utf8(text).unwrap();
    assert!(text.starts_with("n,one_minus_f,integrated_leakage\n"));
    let rows = csv_rows(&text);
    let ns: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ns, ["1", "2", "3", "17", "18", "19", "20"]);

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(summary_path(&a)).unwrap()).unwrap();
    assert_eq!(summary["fit"]["n_min"], 17);
    assert_eq!(summary["fit"]["n_points"], 4);
    assert!(summary["fit"]["exponent"].as_f64().unwrap() < 0.0);
}

fn summary_path(p: &Path) -> std::path::PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".summary.json");
    s.into()
}

#[test]
fn noiseless_error_sweep_refuses_fit() {
    let out = run(&["error-vs-n", "--gamma", "0", "--n-list", "17..20", "--steps", "20", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["summary"]["fit"].is_null());
    assert!(doc["summary"]["warning"].as_str().unwrap().contains("fit refused"));
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn leakage_curve_follows_sine_squared() {
    let out = run(&["leakage-curve", "--n-list", "1", "--steps", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,t,leakage\n"));
    let rows = csv_rows(&text);
    // 2 segments × 100 steps + the initial point
    assert_eq!(rows.len(), 201);
    for row in rows.iter().take(101) {
        let t: f64 = row[1].parse().unwrap();
        let leak: f64 = row[2].parse().unwrap();
        assert!((leak - t.sin().powi(2)).abs() <= 1e-6, "t={t}");
    }
    let last: f64 = rows[200][2].parse().unwrap();
    assert!(last <= 1e-6);
}

#[test]
fn closure_check_reports_su3() {
    let out = run(&["closure-check", "--code", "CII"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["closure_dimension"], 8);
    assert_eq!(doc["universal"], true);

    let out = run(&["closure-check", "--pairs", "1,2"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["closure_dimension"], 1);
    assert_eq!(doc["universal"], false);
}

#[test]
fn analytic_compare_within_half_percent() {
    let out = run(&["analytic-compare", "--n-list", "1,2,4,8,16"]);
    assert!(out.status.success());
    for row in csv_rows(&stdout(&out)) {
        let rel: f64 = row[3].parse().unwrap();
        assert!(rel <= 5e-3, "{row:?}");
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# sweep\nn-list = 1,2\nsteps = 20\ncode = CII\nstate = 110\n").unwrap();
    let out = run(&["analytic-compare", "--config", cfg.to_str().unwrap(), "--n-list", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "4");
}

#[test]
fn bad_input_exit_codes() {
    let cases: [&[&str]; 6] = [
        &["error-vs-n", "--code", "C3"],
        &["error-vs-n", "--state", "0101"],
        &["error-vs-n", "--steps", "5"],
        &["error-vs-n", "--pair", "0,0"],
        &["closure-check", "--code", "PAIR"],
        &["error-vs-n", "--n-list", "0,1"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(&["error-vs-n", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analytic-compare", "--n-list", "1", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(out.status.code(), Some(1));
}
