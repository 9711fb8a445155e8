use super::*;

fn quick(suites: &[Suite]) -> RunConfig {
    RunConfig {
        points: 3,
        suites: suites.to_vec(),
        ..RunConfig::default()
    }
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
    }
    assert!("bogus".parse::<Suite>().is_err());
    assert_eq!(
        parse_suites("ricci, axioms").unwrap(),
        vec![Suite::Ricci, Suite::Axioms]
    );
}

#[test]
fn config_validation() {
    let bad = [
        RunConfig {
            points: 0,
            ..RunConfig::default()
        },
        RunConfig {
            tol_first: 0.0,
            ..RunConfig::default()
        },
        RunConfig {
            tol_second: f64::NAN,
            ..RunConfig::default()
        },
        RunConfig {
            tol_first: 1e-3,
            tol_second: 1e-6,
            ..RunConfig::default()
        },
        RunConfig {
            suites: vec![],
            ..RunConfig::default()
        },
    ];
    for c in bad {
        assert!(run_suite(&c).is_err(), "{c:?}");
    }
}

#[test]
fn only_selected_suites_are_reported() {
    let r = run_suite(&quick(&[Suite::Torsion, Suite::Sasaki])).unwrap();
    let names: Vec<Suite> = r.suites.iter().map(|s| s.suite).collect();
    assert_eq!(names, vec![Suite::Sasaki, Suite::Torsion]);
    assert_eq!(r.status, OverallStatus::Pass);
    assert!(r.conventions.oracle_gate.is_none());
}

#[test]
fn broken_structure_fails_axioms_and_skips_the_rest() {
    let mut c = quick(&Suite::ALL);
    c.break_i2 = true;
    let r = run_suite(&c).unwrap();
    assert_eq!(r.suite(Suite::Axioms).unwrap().status, SuiteStatus::Failed);
    for s in &r.suites[1..] {
        assert_eq!(s.status, SuiteStatus::Skipped, "{}", s.suite);
    }
    assert_eq!(r.status, OverallStatus::Fail);
    assert!(!r.record("axioms.triple-matrices").unwrap().passed);
}

#[test]
fn curvature_suite_carries_the_oracle_gate() {
    let r = run_suite(&quick(&[Suite::Curvature])).unwrap();
    let gate = r.conventions.oracle_gate.as_ref().unwrap();
    assert!(gate.passed);
    assert_eq!(gate.samples, ORACLE_GATE_SAMPLES);
    assert_eq!(
        r.suites[0].records[0].id,
        crate::registry::CURVATURE_ORACLE.id
    );
}

#[test]
fn report_is_deterministic_and_covers_the_registry() {
    let c = RunConfig {
        points: 2,
        ..RunConfig::default()
    };
    let a = run_suite(&c).unwrap();
    let b = run_suite(&c).unwrap();
    assert_eq!(to_json(&a, true), to_json(&b, true));
    for id in crate::registry::ALL {
        assert!(a.record(id.id).is_some(), "missing {}", id.id);
    }
    assert_eq!(a.schema, SCHEMA);
}

#[test]
fn seed_changes_the_samples() {
    let c = quick(&[Suite::Sectional]);
    let a = run_suite(&c).unwrap();
    let b = run_suite(&RunConfig {
        seed: c.seed + 1,
        ..c
    })
    .unwrap();
    assert_ne!(to_json(&a, false), to_json(&b, false));
}

#[test]
fn n_zero_reports_vacuous_horizontal_records() {
    let r = run_suite(&RunConfig {
        n: 0,
        ..quick(&Suite::ALL)
    })
    .unwrap();
    let rec = r.record("torsion.h-pair").unwrap();
    assert_eq!(rec.samples, 0);
    assert!(rec.passed && rec.note.is_some());
    assert!(r.record("torsion.reeb-pair").unwrap().samples > 0);
}

#[test]
fn floats_are_written_with_full_precision() {
    let r = run_suite(&quick(&[Suite::Axioms])).unwrap();
    let json = to_json(&r, false);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["config"]["tol_first"].as_f64().unwrap(), 1e-9);
    assert!(json.contains(&format!("\"tol_first\":{:.16e}", 1e-9)));
}

#[test]
fn holomorphic_table_rows_sum_to_twelve() {
    let rows = holomorphic_table(1, 7, 4).unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert!((r.sum - 12.0).abs() < 1e-6, "{r:?}");
    }
}
