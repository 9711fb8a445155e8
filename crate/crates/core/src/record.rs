use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::registry::Identity;

/// Outcome of checking one identity, possibly aggregated over samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub id: String,
    pub anchor: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub samples: usize,
    /// Informational records document findings and never affect the
    /// overall status.
    pub informational: bool,
    /// Measured quantity, when the identity asserts a specific value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub details: Vec<DetailRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetailRow {
    pub label: String,
    pub values: BTreeMap<String, f64>,
}

impl DetailRow {
    pub fn new<I, K>(label: impl Into<String>, values: I) -> Self
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        DetailRow {
            label: label.into(),
            values: values.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

/// NaN-propagating maximum.
pub fn max_residual(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

impl VerificationRecord {
    /// Single-sample record; passes iff `residual <= tolerance`.
    pub fn check(identity: &Identity, residual: f64, tolerance: f64) -> Self {
        VerificationRecord {
            id: identity.id.to_string(),
            anchor: identity.anchor.to_string(),
            max_residual: residual,
            tolerance,
            passed: residual <= tolerance,
            samples: 1,
            informational: false,
            value: None,
            convention: None,
            note: None,
            details: Vec::new(),
        }
    }

    /// Aggregates residuals over samples. An empty iterator yields a
    /// record with zero samples that passes vacuously.
    pub fn aggregate<I>(identity: &Identity, residuals: I, tolerance: f64) -> Self
    where
        I: IntoIterator<Item = f64>,
    {
        let mut rec = VerificationRecord::check(identity, 0.0, tolerance);
        rec.samples = 0;
        for r in residuals {
            rec.max_residual = max_residual(rec.max_residual, r);
            rec.samples += 1;
        }
        rec.passed = rec.max_residual <= tolerance;
        rec
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_value(mut self, value: f64) -> Self {
        self.value = Some(value);
        self
    }

    pub fn with_convention(mut self, convention: impl Into<String>) -> Self {
        self.convention = Some(convention.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_details(mut self, details: Vec<DetailRow>) -> Self {
        self.details = details;
        self
    }

    /// Folds another record with the same id into this one.
    pub fn merge(&mut self, other: VerificationRecord) {
        debug_assert_eq!(self.id, other.id);
        self.max_residual = max_residual(self.max_residual, other.max_residual);
        self.tolerance = self.tolerance.max(other.tolerance);
        self.passed &= other.passed;
        self.samples += other.samples;
        if self.value.is_none() {
            self.value = other.value;
        }
        if self.convention.is_none() {
            self.convention = other.convention;
        } else if other.convention.is_some() && other.convention != self.convention {
            self.passed = false;
            self.note = Some("samples selected different conventions".to_string());
        }
        if self.note.is_none() {
            self.note = other.note;
        }
        self.details.extend(other.details);
    }

    /// Whether this record counts against the overall status.
    pub fn is_failure(&self) -> bool {
        !self.informational && !self.passed
    }
}

/// Ordered collection that merges records sharing an id.
#[derive(Debug, Clone, Default)]
pub struct RecordSet {
    records: Vec<VerificationRecord>,
}

impl RecordSet {
    pub fn new() -> Self {
        RecordSet::default()
    }

    pub fn push(&mut self, rec: VerificationRecord) {
        match self.records.iter_mut().find(|r| r.id == rec.id) {
            Some(existing) => existing.merge(rec),
            None => self.records.push(rec),
        }
    }

    pub fn extend<I: IntoIterator<Item = VerificationRecord>>(&mut self, recs: I) {
        for r in recs {
            self.push(r);
        }
    }

    pub fn get(&self, id: &str) -> Option<&VerificationRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn into_vec(self) -> Vec<VerificationRecord> {
        self.records
    }

    pub fn as_slice(&self) -> &[VerificationRecord] {
        &self.records
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn aggregate_tracks_worst_sample() {
        let rec = VerificationRecord::aggregate(
            &registry::AXIOMS_PHI_SQUARED,
            [1e-12, 3e-10, 2e-11],
            1e-9,
        );
        assert_eq!(rec.samples, 3);
        assert_eq!(rec.max_residual, 3e-10);
        assert!(rec.passed);
    }

    #[test]
    fn nan_residual_fails() {
        let rec =
            VerificationRecord::aggregate(&registry::AXIOMS_PHI_SQUARED, [1e-12, f64::NAN], 1e-9);
        assert!(rec.max_residual.is_nan());
        assert!(!rec.passed);
    }

    #[test]
    fn set_merges_by_id() {
        let mut set = RecordSet::new();
        set.push(VerificationRecord::check(
            &registry::AXIOMS_PHI_SQUARED,
            1e-12,
            1e-9,
        ));
        set.push(VerificationRecord::check(
            &registry::AXIOMS_ETA_OF_REEB,
            0.0,
            1e-9,
        ));
        set.push(VerificationRecord::check(
            &registry::AXIOMS_PHI_SQUARED,
            1e-3,
            1e-9,
        ));
        let v = set.into_vec();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].samples, 2);
        assert!(!v[0].passed);
    }

    #[test]
    fn conflicting_conventions_fail_the_merge() {
        let id = &registry::SECTIONAL_SEC_RELA;
        let mut a = VerificationRecord::check(id, 0.0, 1e-6).with_convention("plus-r");
        a.merge(VerificationRecord::check(id, 0.0, 1e-6).with_convention("minus-r"));
        assert!(!a.passed);
    }
}
