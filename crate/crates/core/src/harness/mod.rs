//! Run configuration, suite orchestration and the verification report.

mod output;
mod suites;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connections::{CurvatureSign, CurvatureSignResolution, Geometry};
use crate::error::{GeometryError, Result};
use crate::numlin::{quaternion_structures, Alpha, DiffScheme};
use crate::record::VerificationRecord;
use crate::sampling::SampleStream;
use crate::sphere3s::{SignResolution, ThreeSasakiStructure};
use crate::tolerances;

pub use crate::sampling::sample_unit_h;
pub use output::{to_json, to_text};

pub const SCHEMA: &str = "hkc-report/1";

/// Number of samples of the oracle gate, independent of `points`.
pub const ORACLE_GATE_SAMPLES: usize = 50;

/// Verification suites, listed in dependency order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Sasaki,
    Connection,
    Torsion,
    Curvature,
    Ricci,
    Sectional,
    TheoremSec,
    CrossCheck,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Sasaki,
        Suite::Connection,
        Suite::Torsion,
        Suite::Curvature,
        Suite::Ricci,
        Suite::Sectional,
        Suite::TheoremSec,
        Suite::CrossCheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Sasaki => "sasaki",
            Suite::Connection => "connection",
            Suite::Torsion => "torsion",
            Suite::Curvature => "curvature",
            Suite::Ricci => "ricci",
            Suite::Sectional => "sectional",
            Suite::TheoremSec => "theorem-sec",
            Suite::CrossCheck => "cross-check",
        }
    }

    /// Suites that consume curvature and therefore wait for the oracle gate.
    pub fn needs_oracle_gate(self) -> bool {
        self >= Suite::Curvature
    }

    fn stream_id(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s.trim())
            .ok_or_else(|| GeometryError::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

/// Parses a comma-separated suite list.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub points: usize,
    pub seed: u64,
    pub tol_first: f64,
    pub tol_second: f64,
    pub scheme: DiffScheme,
    pub suites: Vec<Suite>,
    /// Debug switch: flips the sign of `I_2` to exercise the failure path.
    #[serde(default)]
    pub break_i2: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 1,
            points: 25,
            seed: 20_240_917,
            tol_first: tolerances::FIRST_DERIVATIVE,
            tol_second: tolerances::SECOND_DERIVATIVE,
            scheme: DiffScheme::ExactForward,
            suites: Suite::ALL.to_vec(),
            break_i2: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(GeometryError::InvalidConfig(m));
        if self.points == 0 {
            return bad("points must be at least 1".into());
        }
        for (name, t) in [
            ("tol-first", self.tol_first),
            ("tol-second", self.tol_second),
        ] {
            if !(t > 0.0 && t.is_finite()) {
                return bad(format!("{name} must be positive and finite, got {t}"));
            }
        }
        if self.tol_first > self.tol_second {
            return bad(format!(
                "tol-first ({}) must not exceed tol-second ({})",
                self.tol_first, self.tol_second
            ));
        }
        if self.suites.is_empty() {
            return bad("no suite selected".into());
        }
        self.scheme.validate()
    }

    /// Selected suites, deduplicated, in dependency order.
    pub fn ordered_suites(&self) -> Vec<Suite> {
        let mut s = self.suites.clone();
        s.sort();
        s.dedup();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleGate {
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
}

/// Sign conventions fixed before (Reeb, curvature) or by (sectional) the
/// suites.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionLedger {
    pub reeb_sign: SignResolution,
    pub curvature_sign: CurvatureSignResolution,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_gate: Option<OracleGate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sectional_convention: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteStatus {
    Passed,
    Failed,
    Errored,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: SuiteStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub records: Vec<VerificationRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverallStatus {
    Pass,
    /// Some identity failed.
    Fail,
    /// A suite aborted on a structural or numerical error.
    Error,
}

impl OverallStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            OverallStatus::Pass => 0,
            OverallStatus::Fail => 1,
            OverallStatus::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub failed: usize,
    pub informational: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: String,
    pub config: RunConfig,
    pub conventions: ConventionLedger,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
    pub status: OverallStatus,
}

impl VerificationReport {
    pub fn records(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.suites.iter().flat_map(|s| s.records.iter())
    }

    pub fn record(&self, id: &str) -> Option<&VerificationRecord> {
        self.records().find(|r| r.id == id)
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

/// Builds the structure a configuration describes.
pub fn build_structure(config: &RunConfig) -> Result<(ThreeSasakiStructure, SignResolution)> {
    let triple = quaternion_structures(config.n);
    let reeb = ThreeSasakiStructure::resolve_reeb_sign(config.n, &triple)?;
    let triple = if config.break_i2 {
        triple.with_flipped(Alpha::TWO)
    } else {
        triple
    };
    Ok((
        ThreeSasakiStructure::new(config.n, triple, reeb.sign)?,
        reeb,
    ))
}

pub(crate) struct Context<'a> {
    pub config: &'a RunConfig,
    pub geo: &'a Geometry,
    pub sign: CurvatureSign,
}

impl Context<'_> {
    pub fn stream(&self, suite: Suite) -> SampleStream {
        SampleStream::new(self.config.seed, suite.stream_id())
    }
}

/// Runs the selected suites and assembles the report.
///
/// Configuration errors and failures to fix the conventions are returned
/// as `Err`; errors inside a suite mark that suite errored and the run
/// continues.
pub fn run_suite(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let (structure, reeb_sign) = build_structure(config)?;
    let geo = Geometry::new(structure, config.scheme)?;
    let curvature_sign = suites::resolve_curvature_sign(&geo, config.seed)?;
    let ctx = Context {
        config,
        geo: &geo,
        sign: curvature_sign.sign,
    };
    let selected = config.ordered_suites();

    let mut ledger = ConventionLedger {
        reeb_sign,
        curvature_sign,
        oracle_gate: None,
        sectional_convention: None,
    };
    let mut reports = Vec::new();

    // The axiom check gates everything downstream, selected or not.
    let axioms = suites::axioms(&ctx);
    let axioms_ok = matches!(&axioms, Ok(r) if r.iter().all(|r| r.passed));
    if selected.contains(&Suite::Axioms) {
        reports.push(finish(Suite::Axioms, axioms));
    }

    let gate = if selected.iter().any(|s| s.needs_oracle_gate()) && axioms_ok {
        Some(suites::oracle_gate(&ctx))
    } else {
        None
    };
    let gate_record = match &gate {
        Some(Ok(rec)) => {
            ledger.oracle_gate = Some(OracleGate {
                passed: rec.passed,
                max_residual: rec.max_residual,
                tolerance: rec.tolerance,
                samples: rec.samples,
            });
            Some(rec.clone())
        }
        _ => None,
    };

    for suite in selected.into_iter().filter(|s| *s != Suite::Axioms) {
        if !axioms_ok {
            reports.push(skipped(suite, "structure axioms failed"));
            continue;
        }
        if suite.needs_oracle_gate() {
            match &gate {
                Some(Err(e)) => {
                    reports.push(errored(suite, format!("oracle gate errored: {e}")));
                    continue;
                }
                Some(Ok(rec)) if !rec.passed => {
                    reports.push(skipped(suite, "oracle gate failed"));
                    continue;
                }
                _ => {}
            }
        }
        let result = match suite {
            Suite::Axioms => unreachable!("handled above"),
            Suite::Sasaki => suites::sasaki(&ctx),
            Suite::Connection => suites::connection(&ctx),
            Suite::Torsion => suites::torsion(&ctx),
            Suite::Curvature => suites::curvature(&ctx).map(|mut r| {
                r.insert(0, gate_record.clone().expect("gate ran"));
                r
            }),
            Suite::Ricci => suites::ricci(&ctx),
            Suite::Sectional => suites::sectional(&ctx).map(|(recs, convention)| {
                ledger.sectional_convention = convention;
                recs
            }),
            Suite::TheoremSec => suites::theorem_sec(&ctx),
            Suite::CrossCheck => suites::cross_check(&ctx),
        };
        reports.push(finish(suite, result));
    }

    let records: Vec<&VerificationRecord> = reports.iter().flat_map(|s| s.records.iter()).collect();
    let summary = Summary {
        records: records.len(),
        failed: records.iter().filter(|r| r.is_failure()).count(),
        informational: records.iter().filter(|r| r.informational).count(),
    };
    let status = if reports.iter().any(|s| s.status == SuiteStatus::Errored) {
        OverallStatus::Error
    } else if summary.failed > 0 || reports.iter().any(|s| s.status == SuiteStatus::Skipped) {
        OverallStatus::Fail
    } else {
        OverallStatus::Pass
    };
    Ok(VerificationReport {
        schema: SCHEMA.to_string(),
        config: config.clone(),
        conventions: ledger,
        suites: reports,
        summary,
        status,
    })
}

fn finish(suite: Suite, result: Result<Vec<VerificationRecord>>) -> SuiteReport {
    match result {
        Ok(records) => SuiteReport {
            suite,
            status: if records.iter().any(|r| r.is_failure()) {
                SuiteStatus::Failed
            } else {
                SuiteStatus::Passed
            },
            message: None,
            records,
        },
        Err(e) => errored(suite, e.to_string()),
    }
}

fn errored(suite: Suite, message: String) -> SuiteReport {
    SuiteReport {
        suite,
        status: SuiteStatus::Errored,
        message: Some(message),
        records: Vec::new(),
    }
}

fn skipped(suite: Suite, reason: &str) -> SuiteReport {
    SuiteReport {
        suite,
        status: SuiteStatus::Skipped,
        message: Some(reason.to_string()),
        records: Vec::new(),
    }
}

/// One row of the holomorphic sectional curvature table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolomorphicRow {
    pub sample: usize,
    pub hbar: [f64; 3],
    pub sum: f64,
}

/// `H̄_α` for every `α` at `points` random unit vectors of `H`.
pub fn holomorphic_table(n: usize, seed: u64, points: usize) -> Result<Vec<HolomorphicRow>> {
    let config = RunConfig {
        n,
        seed,
        points,
        ..RunConfig::default()
    };
    config.validate()?;
    let (structure, _) = build_structure(&config)?;
    let geo = Geometry::new(structure, config.scheme)?;
    suites::holomorphic_rows(&geo, SampleStream::new(seed, 0xC0), points)
}

#[cfg(test)]
mod tests;
