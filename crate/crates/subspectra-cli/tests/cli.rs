//! End-to-end checks of the command surface: output formats, file
//! handling, exit codes, and JSON round trips.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use subspectra::{Digraph, IntPoly, RatFunc};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subspectra"))
}

fn write_c3(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("c3.dg");
    fs::write(&path, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    path
}

fn write_p2(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("p2.dg");
    fs::write(&path, "2 1\n0 1\n").unwrap();
    path
}

fn write_k1(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("k1.dg");
    fs::write(&path, "1 0\n").unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn charpoly_human_readable() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write_c3(dir.path());
    for matrix in ["a", "A"] {
        let out = bin()
            .args(["charpoly", "--input"])
            .arg(&c3)
            .args(["--matrix", matrix])
            .output()
            .unwrap();
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), "λ^3 - 1");
    }
}

#[test]
fn charpoly_json_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write_c3(dir.path());
    let out = bin()
        .args(["charpoly", "--input"])
        .arg(&c3)
        .args(["--matrix", "a", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let parsed: IntPoly = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(parsed, IntPoly::from_i64(&[-1, 0, 0, 1]));
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
}

#[test]
fn coronal_reduced_output() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write_c3(dir.path());
    let out = bin()
        .args(["coronal", "--input"])
        .arg(&c3)
        .args(["--matrix", "a"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3 / (λ - 1)");

    let out = bin()
        .args(["coronal", "--input"])
        .arg(&c3)
        .args(["--matrix", "l", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let chi: RatFunc = serde_json::from_str(stdout(&out).trim()).unwrap();
    // Laplacian rows sum to zero, so the coronal is n/λ
    assert_eq!(
        chi,
        RatFunc::new(IntPoly::from_i64(&[3]), IntPoly::from_i64(&[0, 1])).unwrap()
    );
}

#[test]
fn product_writes_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = write_p2(dir.path());
    let k1 = write_k1(dir.path());
    let out_path = dir.path().join("out.dg");
    let out = bin()
        .args(["product", "--kind", "svj", "--d1"])
        .arg(&p2)
        .arg("--d2")
        .arg(&k1)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("4 6\n"), "got {text}");
    assert_eq!(text.lines().count(), 7);
    let built = Digraph::from_text(&text).unwrap();
    assert_eq!(built.n(), 4);
    assert_eq!(built.m(), 6);
}

#[test]
fn spectrum_prints_one_root_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write_c3(dir.path());
    let out = bin()
        .args(["spectrum", "--input"])
        .arg(&c3)
        .args(["--matrix", "a", "--tol", "1e-12"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    // one root at 1, two at e^{±2πi/3}
    let mut reals = 0;
    for line in text.lines() {
        let parts: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(parts.len(), 2);
        if parts[1].abs() < 1e-9 {
            reals += 1;
            assert!((parts[0] - 1.0).abs() < 1e-9);
        }
    }
    assert_eq!(reals, 1);
}

#[test]
fn connectivity_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write_c3(dir.path());
    let p2 = write_p2(dir.path());
    let out = bin().args(["connectivity", "--input"]).arg(&c3).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "strongly connected");
    let out = bin().args(["connectivity", "--input"]).arg(&p2).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "not strongly connected");
}

#[test]
fn verify_single_theorem_reports_and_exits_clean() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = bin()
        .args([
            "verify",
            "--theorem",
            "thm4.2",
            "--trials",
            "25",
            "--seed",
            "42",
            "--report",
        ])
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["theorem"], "thm4.2");
    assert_eq!(report["trials"], 25);
    assert_eq!(report["seed"], 42);
    assert_eq!(report["failures"].as_array().map(Vec::len), Some(0));
    // stdout carries the same report
    let on_stdout: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(on_stdout, report);
}

#[test]
fn verify_rejects_unknown_theorem() {
    let out = bin()
        .args(["verify", "--theorem", "thm0.0", "--trials", "1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("thm0.0"), "stderr: {err}");
}

#[test]
fn verify_list_names_every_sweep() {
    let out = bin().args(["verify", "--list"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 26);
    assert!(text.contains("thm4.2"));
    assert!(text.contains("prop4.saj.conn"));
}

#[test]
fn malformed_input_is_a_clean_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dg");
    fs::write(&bad, "2 1\n0 0\n").unwrap(); // loop arc
    let out = bin()
        .args(["charpoly", "--input"])
        .arg(&bad)
        .args(["--matrix", "a"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("loop"), "stderr: {err}");

    let missing = dir.path().join("nope.dg");
    let out = bin()
        .args(["charpoly", "--input"])
        .arg(&missing)
        .args(["--matrix", "a"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn graph_product_via_flag() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = dir.path().join("k2.g");
    fs::write(&k2, "2 1\n0 1\n").unwrap();
    let out_path = dir.path().join("out.g");
    let out = bin()
        .args(["product", "--kind", "svc", "--graph", "--d1"])
        .arg(&k2)
        .arg("--d2")
        .arg(&k2)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let g = subspectra::Graph::from_text(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(g.n(), 2 + 1 + 4);
    assert_eq!(g.m(), 2 + 2 + 4);
}
