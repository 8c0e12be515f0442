use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbih-lab"))
        .args(args)
        .output()
        .expect("spawn cbih-lab")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", stderr(out));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

/// Parameters just left of each sign change of the residual column.
fn sign_change_points(rows: &[Vec<f64>]) -> Vec<f64> {
    rows.windows(2)
        .filter(|w| w[0][1].signum() != w[1][1].signum())
        .map(|w| w[0][0])
        .collect()
}

#[test]
fn scan_degree4_changes_sign_once() {
    let out = cli(&["scan", "--degree", "4", "--m1", "1", "--m2", "2", "--samples", "1000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("s,residual\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1000);
    assert_eq!(sign_change_points(&rows).len(), 1);
}

#[test]
fn scan_degree3_changes_sign_only_at_pi_over_6() {
    let rows = csv_rows(&stdout(&cli(&[
        "scan",
        "--degree",
        "3",
        "--m1",
        "1",
        "--samples",
        "500",
    ])));
    let changes = sign_change_points(&rows);
    assert_eq!(changes.len(), 1);
    assert!((changes[0] - PI / 6.0).abs() < PI / 3.0 / 499.0);
}

#[test]
fn scan_degree1_changes_sign_at_small_hypersphere() {
    let rows = csv_rows(&stdout(&cli(&["scan", "--degree", "1", "--m1", "2"])));
    let changes = sign_change_points(&rows);
    let h = PI / 999.0;
    assert!(changes.iter().any(|&s| (s.sin().powi(2) - 1.0 / 3.0).abs() < 2.0 * h));
    // also the equator and the mirror image π − s*
    assert_eq!(changes.len(), 3);
}

#[test]
fn solve_degree2_matches_cubic_roots() {
    let r = json(&cli(&["solve", "--degree", "2", "--m1", "1", "--m2", "2"]));
    let s = r["s_star"][0].as_f64().unwrap();
    assert!((s.tan().powi(2) - 3.6515736286406324).abs() < 1e-9);
    let r = json(&cli(&["solve", "--degree", "2", "--m1", "1", "--m2", "3"]));
    let s = r["s_star"][0].as_f64().unwrap();
    assert!((s.tan().powi(2) - 1.9705689393946684).abs() < 1e-9);
    assert_eq!(r["roots"][0]["is_minimal"], false);
}

#[test]
fn solve_degree6_gives_only_pi_over_12() {
    let r = json(&cli(&["solve", "--degree", "6", "--m1", "1"]));
    let s: Vec<f64> = r["s_star"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(s.len(), 1);
    assert!((s[0] - PI / 12.0).abs() < 1e-10);
    assert_eq!(r["roots"][0]["is_minimal"], true);
}

#[test]
fn verify_suites_pass_with_schema() {
    for suite in ["poly", "ode"] {
        let r = json(&cli(&["verify", "--suite", suite]));
        assert_eq!(r["suite"], suite);
        assert_eq!(r["overall"], "pass");
        assert!(r.get("timestamp").is_none());
        for c in r["checks"].as_array().unwrap() {
            for key in ["id", "status", "measured", "expected", "tol"] {
                assert!(c.get(key).is_some(), "{key} missing");
            }
        }
    }
    let r = json(&cli(&["verify", "--suite", "poly"]));
    let ids: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"poly.p3_at_1_exact") && ids.contains(&"poly.p3_at_2_exact"));
    let r = json(&cli(&["verify", "--suite", "ode"]));
    let ids: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"ode.max_drift") && ids.contains(&"ode.ctension_minus_16h"));
}

#[test]
fn verify_all_passes() {
    let r = json(&cli(&["verify"]));
    assert_eq!(r["suite"], "all");
    assert_eq!(r["overall"], "pass");
}

#[test]
fn verify_with_corrupted_check_exits_1_naming_it() {
    let out = cli(&["verify", "--suite", "all", "--corrupt", "poly.p3_at_1_exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr(&out).trim(), "error: CHECK_FAILED: poly.p3_at_1_exact");
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["overall"], "fail");
}

#[test]
fn verify_stamp_adds_timestamp() {
    let r = json(&cli(&["verify", "--suite", "poly", "--stamp"]));
    assert!(r["timestamp"].as_u64().unwrap() > 1_600_000_000);
}

#[test]
fn tables_in_text_and_json() {
    let r = json(&cli(&["table", "thm5-scal", "--format", "json"]));
    let scal: Vec<f64> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["computed"].as_f64().unwrap())
        .collect();
    for (got, want) in scal.iter().zip([12.0, 16.0, 8.0, 12.0, 17.82, 0.0]) {
        assert!((got - want).abs() < 0.01, "{got} vs {want}");
    }
    assert_eq!(r["rows"][4]["relation"], ">=");

    let text = stdout(&cli(&["table", "thm2"]));
    assert!(text.contains("S2(1/sqrt3)") && text.contains("S1(1/sqrt2)xS1(1/sqrt2)"));
    let r = json(&cli(&["table", "thm4", "--format", "json"]));
    let rows = r["rows"].as_array().unwrap();
    let r1 = rows.iter().find(|x| x["reference_form"] == "(1-1/sqrt3)/2").unwrap();
    assert!((r1["computed"].as_f64().unwrap() - 0.5 * (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-10);
    assert!(rows.iter().any(|x| x["hypersurface"] == "S1xS3"));
}

#[test]
fn ode_csv_and_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = cli(&[
        "ode",
        "--C",
        "-0.1",
        "--s-max",
        "20",
        "--step",
        "1e-3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("s,h1,h1p,prime_residual,H,ctension_residual\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 20_001);
    assert!(rows.iter().all(|r| r[3].abs() < 1e-8));

    let out = cli(&["ode", "--C", "-0.3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: DOMAIN_ERROR:"));
    assert_eq!(stderr(&out).lines().count(), 1);

    let rows = csv_rows(&stdout(&cli(&["ode", "--C", "-0.24999"])));
    let (lo, hi) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| {
        (a.min(r[1]), b.max(r[1]))
    });
    assert!(hi - lo < 1e-2);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["solve", "--degree", "4", "--m1", "1", "--m2", "2"],
        &["ode", "--C", "-0.2", "--s-max", "5"],
        &["verify", "--suite", "spectra"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let a = dir.path().join(format!("{i}a"));
        let b = dir.path().join(format!("{i}b"));
        for p in [&a, &b] {
            let mut full = args.to_vec();
            full.extend(["--out", p.to_str().unwrap()]);
            assert!(cli(&full).status.success());
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lab.conf");
    std::fs::write(&cfg, "# grid\nscan_samples = 37\node_s_max = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    let rows = csv_rows(&stdout(&cli(&["--config", c, "scan", "--degree", "3", "--m1", "1"])));
    assert_eq!(rows.len(), 37);
    let rows = csv_rows(&stdout(&cli(&[
        "scan",
        "--config",
        c,
        "--degree",
        "3",
        "--m1",
        "1",
        "--samples",
        "11",
    ])));
    assert_eq!(rows.len(), 11);
    let rows = csv_rows(&stdout(&cli(&["--config", c, "ode", "--C", "-0.1"])));
    assert_eq!(rows.len(), 1001);

    std::fs::write(&cfg, "speed = 3\n").unwrap();
    let out = cli(&["--config", c, "table", "thm2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: CONFIG_ERROR:"));
}

#[test]
fn error_exit_codes() {
    let out = cli(&["table", "thm7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: UNKNOWN_THEOREM:"));
    let out = cli(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: UNKNOWN_SUITE:"));
    let out = cli(&["solve", "--degree", "5", "--m1", "1", "--m2", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cli(&["scan", "--degree", "4", "--m1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new("/nonexistent-dir").exists());
    let out = cli(&["table", "thm2", "--out", "/nonexistent-dir/t.txt"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).starts_with("error: IO_ERROR:"));
    let out = cli(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
