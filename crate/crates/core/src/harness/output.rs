use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use super::{SuiteStatus, VerificationReport};

/// Writes every float with 17 significant digits so the report round-trips
/// bit-exactly; everything else is delegated.
struct Exact<F>(F);

impl<F: Formatter> Formatter for Exact<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_key(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes a report. Non-finite floats become `null`.
pub fn to_json(report: &VerificationReport, pretty: bool) -> String {
    let mut buf = Vec::new();
    let result = if pretty {
        let mut ser = Serializer::with_formatter(&mut buf, Exact(PrettyFormatter::new()));
        report.serialize(&mut ser)
    } else {
        let mut ser =
            Serializer::with_formatter(&mut buf, Exact(serde_json::ser::CompactFormatter));
        report.serialize(&mut ser)
    };
    result.expect("report serialization cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Human-readable summary, one line per record.
pub fn to_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let c = &report.conventions;
    out.push_str(&format!(
        "{} n={} points={} seed={}\n",
        report.schema, report.config.n, report.config.points, report.config.seed
    ));
    out.push_str(&format!(
        "reeb sign {:+}, curvature sign {:+}",
        c.reeb_sign.sign.value(),
        c.curvature_sign.sign.value()
    ));
    if let Some(g) = &c.oracle_gate {
        out.push_str(&format!(", oracle gate {:.3e}", g.max_residual));
    }
    if let Some(s) = &c.sectional_convention {
        out.push_str(&format!(", sectional {s}"));
    }
    out.push('\n');
    for s in &report.suites {
        let status = match s.status {
            SuiteStatus::Passed => "passed",
            SuiteStatus::Failed => "failed",
            SuiteStatus::Errored => "errored",
            SuiteStatus::Skipped => "skipped",
        };
        out.push_str(&format!("\n[{}] {status}", s.suite));
        if let Some(m) = &s.message {
            out.push_str(&format!(": {m}"));
        }
        out.push('\n');
        for r in &s.records {
            let tag = match (r.passed, r.informational) {
                (true, _) => "PASS",
                (false, true) => "INFO",
                (false, false) => "FAIL",
            };
            out.push_str(&format!(
                "  {tag} {:<44} {:>10.3e} <= {:.0e} ({} samples)",
                r.id, r.max_residual, r.tolerance, r.samples
            ));
            if let Some(v) = r.value {
                out.push_str(&format!(" value={v:.10}"));
            }
            if let Some(conv) = &r.convention {
                out.push_str(&format!(" [{conv}]"));
            }
            out.push('\n');
            if let Some(n) = &r.note {
                out.push_str(&format!("       {n}\n"));
            }
        }
    }
    out.push_str(&format!(
        "\n{} records, {} failed, {} informational: {:?}\n",
        report.summary.records, report.summary.failed, report.summary.informational, report.status
    ));
    out
}
