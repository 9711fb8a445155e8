use hkc_core::harness::{run_suite, to_json, OverallStatus, RunConfig, Suite, SuiteStatus};
use hkc_core::numlin::DiffScheme;
use hkc_core::registry;
use proptest::prelude::*;
use serde_json::Value;

fn config(n: usize, points: usize) -> RunConfig {
    RunConfig {
        n,
        points,
        ..RunConfig::default()
    }
}

#[test]
fn every_record_is_registered_with_its_anchor() {
    let r = run_suite(&config(1, 3)).unwrap();
    for rec in r.records() {
        let id = registry::lookup(&rec.id).unwrap_or_else(|| panic!("unregistered {}", rec.id));
        assert_eq!(rec.anchor, id.anchor);
    }
    assert_eq!(r.summary.records, registry::ALL.len());
}

#[test]
fn status_follows_non_informational_records() {
    let r = run_suite(&config(1, 3)).unwrap();
    let failing = r
        .records()
        .filter(|x| !x.passed && !x.informational)
        .count();
    assert_eq!(r.summary.failed, failing);
    assert_eq!(r.status == OverallStatus::Pass, failing == 0);
    let ok = run_suite(&RunConfig {
        suites: vec![Suite::Axioms, Suite::Connection, Suite::Sectional],
        ..config(1, 3)
    })
    .unwrap();
    assert_eq!(ok.status, OverallStatus::Pass);
}

#[test]
fn sectional_only_report() {
    let r = run_suite(&RunConfig {
        suites: vec![Suite::Sectional],
        ..config(1, 4)
    })
    .unwrap();
    assert_eq!(r.suites.len(), 1);
    assert!(r.records().all(|x| x.id.starts_with("sectional.")));
    assert_eq!(
        r.conventions.sectional_convention.as_deref(),
        Some("plus-R")
    );
    assert!(r.conventions.oracle_gate.as_ref().unwrap().passed);
}

#[test]
fn ricci_constants_track_n() {
    for n in [1usize, 2] {
        let r = run_suite(&RunConfig {
            suites: vec![Suite::Ricci],
            ..config(n, 2)
        })
        .unwrap();
        let lc = r.record(registry::RICCI_LEVI_CIVITA.id).unwrap();
        assert!(lc.passed);
        assert!((lc.value.unwrap() - (4 * n + 2) as f64).abs() < 1e-9);
        // Sum of sectional curvatures of the H-connection over an H-frame:
        // 3 phi-planes of curvature 4 plus 4n - 4 planes of curvature 1.
        let direct = r.record(registry::RICCI_H_CONNECTION.id).unwrap();
        assert!((direct.value.unwrap() - (4 * n + 8) as f64).abs() < 1e-9);
        assert!(!direct.passed);
        let alg = r.record(registry::RICCI_H_CONNECTION_ALGEBRAIC.id).unwrap();
        assert!((alg.value.unwrap() - (4 * n + 5) as f64).abs() < 1e-9);
        assert!(alg.informational);
    }
}

#[test]
fn s3_runs_every_suite() {
    let r = run_suite(&config(0, 3)).unwrap();
    assert!(r
        .suites
        .iter()
        .all(|s| s.status != SuiteStatus::Errored && s.status != SuiteStatus::Skipped));
    assert!(r.record(registry::SASAKI_REEB_BRACKET.id).unwrap().passed);
    assert_eq!(r.record(registry::CURVATURE_COR_XXX.id).unwrap().samples, 0);
}

#[test]
fn finite_differences_agree_with_exact_derivatives() {
    let base = RunConfig {
        suites: vec![Suite::Sasaki, Suite::Curvature],
        tol_first: 1e-6,
        tol_second: 1e-4,
        ..config(1, 3)
    };
    let exact = run_suite(&base).unwrap();
    let fd = run_suite(&RunConfig {
        scheme: DiffScheme::central(1e-5).unwrap(),
        ..base
    })
    .unwrap();
    assert_eq!(fd.status, OverallStatus::Pass);
    assert_eq!(exact.status, OverallStatus::Pass);
}

#[test]
fn json_is_stable_and_parseable() {
    let r = run_suite(&RunConfig {
        suites: vec![Suite::TheoremSec],
        ..config(1, 2)
    })
    .unwrap();
    let text = to_json(&r, true);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "hkc-report/1");
    let recs = v["suites"][0]["records"].as_array().unwrap();
    let mixed = recs
        .iter()
        .find(|x| x["id"] == "theorem-sec.mixed-eta")
        .unwrap();
    assert_eq!(mixed["informational"], true);
    assert!(mixed["details"]
        .as_array()
        .unwrap()
        .iter()
        .all(|d| d["label"].as_str().unwrap().contains("t=")));
    let compact: Value = serde_json::from_str(&to_json(&r, false)).unwrap();
    assert_eq!(compact, v);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reports_are_reproducible(seed in any::<u64>(), points in 1usize..4) {
        let c = RunConfig { seed, suites: vec![Suite::Connection, Suite::Curvature], ..config(1, points) };
        prop_assert_eq!(to_json(&run_suite(&c).unwrap(), false), to_json(&run_suite(&c).unwrap(), false));
    }

    #[test]
    fn passing_suites_pass_for_any_seed(seed in any::<u64>()) {
        let c = RunConfig {
            seed,
            suites: vec![Suite::Axioms, Suite::Sasaki, Suite::Connection, Suite::Torsion, Suite::Curvature, Suite::Sectional],
            ..config(1, 2)
        };
        let r = run_suite(&c).unwrap();
        prop_assert_eq!(r.status, OverallStatus::Pass);
    }
}
