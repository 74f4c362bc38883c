//! End-to-end tests of the binary: exit-code contract, report determinism,
//! config validation, and the CSV surfaces.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gassym"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gassym-cli-{name}"));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn commutators_pass_with_66_pairs() {
    let out = run(&["verify", "commutators", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["pass"], 66);
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn jacobi_covers_220_triples() {
    let out = run(&["verify", "jacobi", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["entries"].as_array().unwrap().len(), 220);
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn subalgebra_prefix_matches_both_branches() {
    let out = run(&["verify", "subalgebras", "--id", "4.73"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4.73/a≠0"));
    assert!(text.contains("4.73/a=0,b=1"));
    assert!(text.contains("summary: 6 passed, 0 failed"));
}

#[test]
fn unknown_command_and_bad_ids_exit_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "subalgebras", "--id", "9.99"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["figure", "--id", "9", "--out", "/tmp/gassym-nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_catalog_file_exits_2() {
    let out = run(&[
        "verify",
        "subalgebras",
        "--catalog",
        "/nonexistent/catalog.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failure_exits_1() {
    // A catalog with a deliberately wrong invariant: annihilation fails and
    // the exit code reports it.
    let dir = temp_dir("bad-catalog");
    let mut text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/subalgebras.json"),
    )
    .unwrap();
    // 4.46 invariant "t*u + P - x" -> "t*u + P - y" breaks annihilation.
    assert!(text.contains("\"t*u + P - x\""));
    text = text.replace("\"t*u + P - x\"", "\"t*u + P - y\"");
    let path = dir.join("catalog.json");
    std::fs::write(&path, text).unwrap();

    let out = run(&[
        "verify",
        "subalgebras",
        "--id",
        "4.46",
        "--catalog",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("candidate erratum"));
}

#[test]
fn reports_are_deterministic_up_to_wall_time() {
    let strip = |text: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        for e in v["entries"].as_array_mut().unwrap() {
            e.as_object_mut().unwrap().remove("wall_time_ms");
        }
        v
    };
    let a = run(&["verify", "automorphisms", "--seed", "7", "--json"]);
    let b = run(&["verify", "automorphisms", "--seed", "7", "--json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));
}

#[test]
fn config_defaults_and_validation() {
    let dir = temp_dir("config");
    let ok = dir.join("ok.json");
    std::fs::write(&ok, r#"{"samples": 5, "seed": 3}"#).unwrap();
    let out = run(&[
        "verify",
        "automorphisms",
        "--config",
        ok.to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["seed"], 3);
    assert_eq!(report["samples"], 5);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"samples": 0}"#).unwrap();
    let out = run(&["verify", "automorphisms", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_supplies_family_defaults() {
    let dir = temp_dir("family-config");
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"family": {"phi": "-arg2^2 - arg1^2", "gamma": 1}}"#,
    )
    .unwrap();
    let csv = dir.join("run.csv");
    let out = run(&[
        "simulate",
        "--family",
        "blowup",
        "--label",
        "1,1,1",
        "--t0",
        "0.1",
        "--t1",
        "0.2",
        "--step",
        "1e-2",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // x(0.1) = u0 t - Phi(1,1) = 0.1 + 2 with the config profile.
    let text = std::fs::read_to_string(&csv).unwrap();
    let first = text.lines().nth(1).unwrap();
    let x: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert!((x - 2.1).abs() < 1e-12);
}

#[test]
fn simulate_writes_monotone_csv() {
    let dir = temp_dir("simulate");
    let csv = dir.join("run.csv");
    let out = run(&[
        "simulate",
        "--family",
        "blowup",
        "--label",
        "1,1,1",
        "--t0",
        "0.1",
        "--t1",
        "3",
        "--step",
        "1e-2",
        "--phi",
        "-arg2^2 - arg1^2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,x,y,z,u,v,w,rho,P,S");
    let mut last = f64::NEG_INFINITY;
    for line in lines {
        let t: f64 = line.split(',').next().unwrap().parse().unwrap();
        assert!(t > last);
        last = t;
    }

    // A span across the blow-up time is a usage error.
    let out = run(&[
        "simulate",
        "--family",
        "blowup",
        "--label",
        "1,1,1",
        "--t0",
        "-1",
        "--t1",
        "1",
        "--step",
        "1e-2",
        "--out",
        dir.join("bad.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figure_export_creates_manifest() {
    let dir = temp_dir("figure");
    let out = run(&["figure", "--id", "1", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["figure"], 1);
    assert_eq!(manifest["parameters"]["a"], "4/5");
    assert_eq!(manifest["files"].as_array().unwrap().len(), 3);
}

#[test]
fn solution_suite_accepts_concrete_definitions() {
    let out = run(&[
        "verify",
        "solution",
        "--family",
        "blowup",
        "--gamma",
        "1",
        "--phi",
        "-arg2^2 - arg1^2",
        "--f",
        "arg1^3",
        "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["suite"], "solution/blowup");
}
