use std::process::{Command, Output};

use adlv_cli::document::load_stream;
use adlv_cli::RunReport;

fn adlv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adlv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> RunReport {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = adlv(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn code(args: &[&str]) -> i32 {
    adlv(args).status.code().expect("exit code")
}

#[test]
fn dim_methods_agree() {
    let r = report(&[
        "dim", "--d", "1", "--h", "3", "--m", "4", "--mu", "0,1,3", "--method", "both",
    ]);
    assert_eq!(r.lookup("formula"), Some("2"));
    assert_eq!(r.lookup("enumerate"), Some("2"));
    assert_eq!(r.lookup("dimension"), Some("2"));
    assert!(r.checks.iter().all(|c| c.passed));
}

#[test]
fn dim_of_the_minuscule_case_is_zero() {
    let r = report(&["dim", "--d", "1", "--h", "2", "--m", "1", "--mu", "0,1"]);
    assert_eq!(r.lookup("dimension"), Some("0"));
}

#[test]
fn dim_with_slopes_and_several_factors() {
    let r = report(&[
        "dim",
        "--d",
        "2",
        "--h",
        "3",
        "--slopes",
        "1,1",
        "--mu",
        "0,0,1,0,0,1",
        "--method",
        "both",
    ]);
    assert_eq!(r.lookup("dimension"), Some("1"));
}

#[test]
fn dim_for_a_general_class() {
    let r = report(&["dim", "--h", "3", "--mu", "0,0,3", "--newton", "0,3/2,3/2"]);
    assert_eq!(r.lookup("dimension"), Some("1"));
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(
        code(&["dim", "--d", "1", "--h", "2", "--m", "2", "--mu", "0,1"]),
        2
    );
    assert_eq!(
        code(&["dim", "--h", "3", "--mu", "1,1,1", "--newton", "0,0,3"]),
        3
    );
    assert_eq!(code(&["dim", "--h", "2", "--m", "1", "--mu", "1,0"]), 4);
    assert_eq!(code(&["dim", "--h", "2", "--m", "1", "--mu", "0,1,2"]), 4);
    assert_eq!(code(&["dim", "--h", "2", "--mu", "0,1"]), 4);
    assert_eq!(
        code(&["dim", "--h", "2", "--m", "1", "--mu", "0,1", "--method", "guess"]),
        4
    );
    assert_eq!(
        code(&["conjecture", "--h", "3", "--m", "4", "--mu", "0,1,3"]),
        4
    );
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn enumerate_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("charts.jsonl");
    let p = path.to_str().unwrap();
    let r = report(&[
        "enumerate",
        "--d",
        "2",
        "--h",
        "3",
        "--slopes",
        "3,1",
        "--mu",
        "0,1,2,0,0,1",
        "--out",
        p,
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines = load_stream(&text).unwrap();
    assert_eq!(r.lookup("charts"), Some(lines.len().to_string().as_str()));
    let again: String = lines.iter().map(|l| l.to_json() + "\n").collect();
    assert_eq!(again, text);
    let top = lines.iter().map(|l| l.v_dim).max().unwrap();
    assert_eq!(r.lookup("dimension"), Some(top.to_string().as_str()));
}

#[test]
fn enumerate_streams_to_stdout() {
    let out = adlv(&["enumerate", "--h", "2", "--m", "1", "--mu", "0,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines = load_stream(&text).unwrap();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].cyclic);
    assert!(String::from_utf8_lossy(&out.stderr).contains("charts"));
}

#[test]
fn polygon_figure_marks_five_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("figure.svg");
    let r = report(&[
        "polygon",
        "--nu1",
        "3/7,3/7,3/7,3/7,3/7,3/7,3/7",
        "--nu2",
        "0,0,0,0,0,1,2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.lookup("dots"), Some("5"));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<circle").count(), 5);
}

#[test]
fn polygon_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let out = out.to_str().unwrap();
    assert_eq!(
        code(&["polygon", "--nu1", "1/2,1/2", "--nu2", "1/2,1/2", "--out", out]),
        4
    );
    assert_eq!(
        code(&["polygon", "--nu1", "0,1", "--nu2", "1,0", "--out", out]),
        4
    );
    assert_eq!(
        code(&["polygon", "--nu1", "0,x", "--nu2", "0,1", "--out", out]),
        4
    );
}

#[test]
fn conjecture_table_for_two_factors() {
    let r = report(&[
        "conjecture",
        "--d",
        "2",
        "--h",
        "3",
        "--slopes",
        "1,1",
        "--mu",
        "0,0,1,0,0,1",
    ]);
    assert_eq!(r.lookup("charts"), Some("3"));
    assert_eq!(r.lookup("orbit"), Some("3"));
    assert_eq!(r.lookup("top"), Some("2"));
    assert_eq!(r.lookup("predicted top"), Some("2"));
    assert!(r.details.is_some());
}

#[test]
fn conjecture_for_one_factor_has_one_top_chart() {
    let r = report(&["conjecture", "--h", "3", "--m", "1", "--mu", "0,0,1"]);
    assert_eq!(r.lookup("top"), Some("1"));
    assert_eq!(r.lookup("predicted top"), Some("1"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "metrics", "--grid", "small"];
    let a = report(&args);
    let b = report(&args);
    assert_eq!(a, b);
    assert!(a
        .checks
        .iter()
        .any(|c| c.name == "metrics: lattice figure" && c.passed));
}

#[test]
fn verify_respects_the_worker_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_adlv"))
        .args(["verify", "--suite", "levi", "--grid", "small"])
        .env("ADLV_WORKERS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_adlv"))
        .args(["verify", "--suite", "levi"])
        .env("ADLV_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_all_passes_on_the_small_grid() {
    let r = report(&["verify", "--suite", "all", "--grid", "small"]);
    assert_eq!(r.hard_failures(), 0, "{}", r.to_text());
}
