use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_with(args, None)
}

fn run_with(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_singint"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("SINGINT_THREADS", t);
    }
    cmd.output().expect("run singint")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_reports_and_round_trips() {
    let out = run(&[
        "verify",
        "--d",
        "3",
        "--m",
        "2",
        "--alpha-re",
        "3",
        "--alpha-im",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["manifest"]["command"], "verify");
    assert_eq!(v["converged"], true);
    assert!(v["rel_error"].as_f64().unwrap() < 1e-6);
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again.as_bytes(), out.stdout.as_slice());

    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys[0], "manifest");
    assert!(keys.contains(&"closed_form_re") && keys.contains(&"n_evaluations"));
}

#[test]
fn verify_exit_codes() {
    let outside = run(&["verify", "--d", "2", "--m", "1", "--alpha-re", "2.5"]);
    assert_eq!(outside.status.code(), Some(2));
    assert!(stderr(&outside).contains("2(m-1) < Re(alpha) < 2m"));

    let wrong_dim = run(&[
        "verify",
        "--d",
        "2",
        "--m",
        "1",
        "--alpha-re",
        "1",
        "--x",
        "1,2,3",
    ]);
    assert_eq!(wrong_dim.status.code(), Some(2));

    let missing = run(&["verify", "--d", "2", "--alpha-re", "1"]);
    assert_eq!(missing.status.code(), Some(2));

    let budget = run(&[
        "verify",
        "--d",
        "2",
        "--m",
        "1",
        "--alpha-re",
        "1.9",
        "--max-subdivisions",
        "1",
    ]);
    assert_eq!(budget.status.code(), Some(1), "{}", stderr(&budget));

    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn origin_is_degenerate() {
    let out = run(&[
        "verify",
        "--d",
        "2",
        "--m",
        "1",
        "--alpha-re",
        "1",
        "--x",
        "0,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["numeric_re"].as_f64(), Some(0.0));
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

fn sweep(dir: &Path, name: &str, grid: &str, threads: Option<&str>) -> (Output, String) {
    let path = dir.join(name);
    let out = run_with(
        &[
            "sweep",
            "--d-list",
            "1,2,3",
            "--m-list",
            "1,2",
            "--alpha-grid",
            grid,
            "--out",
            path.to_str().unwrap(),
        ],
        threads,
    );
    let csv = fs::read_to_string(&path).unwrap_or_default();
    (out, csv)
}

#[test]
fn sweep_assigns_strips() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = sweep(dir.path(), "a.csv", "0.5:3.5:1.0", None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["rows"], 24);
    assert_eq!(v["converged"], 12);
    assert_eq!(v["skipped"], 12);
    assert_eq!(v["failed"], 0);

    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap().len(), 11);
    for record in reader.records() {
        let r = record.unwrap();
        let m: f64 = r[1].parse().unwrap();
        let alpha: f64 = r[2].parse().unwrap();
        let inside = 2.0 * (m - 1.0) < alpha && alpha < 2.0 * m;
        assert_eq!(&r[9] == "true", inside, "{r:?}");
        if inside {
            let numeric: f64 = r[4].parse().unwrap();
            let closed: f64 = r[6].parse().unwrap();
            assert!((numeric - closed).abs() <= 1e-6 * closed.abs());
            assert!(r[10].is_empty());
        } else {
            assert!(r[4].is_empty() && !r[10].is_empty());
        }
    }
}

#[test]
fn sweep_output_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let (a, one) = sweep(dir.path(), "one.csv", "0.25:3.75:0.5", Some("1"));
    let (b, many) = sweep(dir.path(), "many.csv", "0.25:3.75:0.5", Some("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(one, many);
}

#[test]
fn sweep_empty_grid_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = sweep(dir.path(), "empty.csv", "3:1:0.5", None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("d,m,alpha_re"));
    assert_eq!(json(&out)["rows"], 0);

    let bad = sweep(dir.path(), "bad.csv", "0:1:0", None).0;
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_and_pole_probe_run() {
    let out = run(&[
        "decompose",
        "--d",
        "3",
        "--m",
        "1",
        "--alpha-re",
        "1.2",
        "--radius",
        "0.7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert!(v["rel_error"].as_f64().unwrap() < 1e-6);
    for key in ["t1_re", "t2_re", "t3_re", "sum_re", "closed_form_re"] {
        assert!(v[key].is_number(), "{key}");
    }

    let out = run(&[
        "pole-probe",
        "--d",
        "2",
        "--m",
        "1",
        "--epsilons",
        "0.2,0.1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v["residue_spread"].is_number());

    let bad = run(&["pole-probe", "--d", "2", "--m", "1", "--epsilons", "1.5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dcov_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..12)
        .map(|i| format!("{},{}\n", i * i % 7, f64::from(i).sqrt()))
        .collect();
    let x = write(dir.path(), "x.csv", &format!("a,b\n{rows}"));
    let out = run(&[
        "dcov",
        "--x-file",
        &x,
        "--y-file",
        &x,
        "--permutations",
        "19",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["n"], 12);
    assert!((v["dcor"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["p_value"].as_f64(), Some(0.05));
    assert!(v["warning"].is_null());

    let plain = run(&["dcov", "--x-file", &x, "--y-file", &x]);
    assert!(json(&plain).get("p_value").is_none());
}

#[test]
fn dcov_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let three = write(dir.path(), "three.csv", "1\n2\n3\n");
    let four = write(dir.path(), "four.csv", "1\n2\n3\n4\n");
    let out = run(&["dcov", "--x-file", &three, "--y-file", &four]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("row count mismatch"));

    let malformed = write(dir.path(), "bad.csv", "x\n1\n2\nabc\n4\n");
    let out = run(&["dcov", "--x-file", &malformed, "--y-file", &four]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let ragged = write(dir.path(), "ragged.csv", "1,2\n3,4\n5\n6,7\n");
    let out = run(&["dcov", "--x-file", &ragged, "--y-file", &four]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    let infinite = write(dir.path(), "inf.csv", "1\ninf\n3\n4\n");
    let out = run(&["dcov", "--x-file", &infinite, "--y-file", &four]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "dcov",
        "--x-file",
        &dir.path().join("nope.csv").display().to_string(),
        "--y-file",
        &four,
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "dcov",
        "--x-file",
        &four,
        "--y-file",
        &four,
        "--centering",
        "sideways",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dcov_extended_alpha_warns() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.csv", "1\n2\n4\n8\n");
    let y = write(dir.path(), "y.csv", "0\n1\n0\n1\n");
    let out = run(&[
        "dcov",
        "--x-file",
        &x,
        "--y-file",
        &y,
        "--alpha",
        "3",
        "--centering",
        "unbiased",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(json(&out)["warning"].is_string());
    assert!(stderr(&out).contains("alpha"));
}
