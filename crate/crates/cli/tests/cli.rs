use std::process::{Command, Output};

use serde_json::Value;

fn hkc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkc"))
        .args(args)
        .env_remove("HKC_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn passing_subset_exits_zero() {
    let out = hkc(&[
        "verify",
        "--points",
        "3",
        "--suites",
        "axioms,sasaki,torsion",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "hkc-report/1");
    assert_eq!(v["status"], "pass");
    let names: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["axioms", "sasaki", "torsion"]);
}

#[test]
fn identity_failure_exits_one() {
    let out = hkc(&["verify", "--points", "3", "--suites", "cross-check"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "fail");
}

#[test]
fn bad_configuration_exits_two() {
    for args in [
        &["verify", "--points", "0"][..],
        &["verify", "--suites", "nope"],
        &["verify", "--tol-first", "1e-3", "--tol-second", "1e-6"],
        &["verify", "--scheme", "fd", "--fd-step", "-1"],
        &["curvature", "--alpha", "4"],
    ] {
        let out = hkc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn broken_i2_fails_axioms() {
    let out = hkc(&["verify", "--points", "2", "--break-i2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites[0]["status"], "failed");
    assert!(suites[1..].iter().all(|s| s["status"] == "skipped"));
}

#[test]
fn out_file_matches_stdout_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["verify", "--points", "2", "--suites", "sectional"];
    let a = hkc(&args);
    let b = hkc(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn environment_seed_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_hkc"));
        c.args([
            "verify", "--points", "2", "--suites", "axioms", "--seed", seed,
        ]);
        match env {
            Some(v) => c.env("HKC_SEED", v),
            None => c.env_remove("HKC_SEED"),
        };
        json(&c.output().unwrap())
    };
    let from_env = run(Some("42"), "7");
    assert_eq!(from_env["config"]["seed"], 42);
    assert_eq!(from_env, run(None, "42"));
}

#[test]
fn finite_difference_scheme_runs() {
    let out = hkc(&[
        "verify",
        "--points",
        "2",
        "--suites",
        "sasaki",
        "--scheme",
        "fd",
        "--tol-first",
        "1e-6",
        "--tol-second",
        "1e-4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(json(&out)["config"]["scheme"].is_object());
}

#[test]
fn text_format_has_one_line_per_record() {
    let out = hkc(&[
        "verify", "--points", "2", "--suites", "torsion", "--format", "text",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_start().starts_with("PASS"))
            .count(),
        4
    );
}

#[test]
fn curvature_table_prints_sum_check() {
    let out = hkc(&[
        "curvature",
        "--n",
        "1",
        "--seed",
        "5",
        "--alpha",
        "2",
        "--points",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Hbar_2"));
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().last().unwrap().ends_with("(pass)"));
}
