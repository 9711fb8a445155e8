//! Curvature analysis on the contact distribution: the algebraic expansion
//! of `R̄` in terms of `R`, Ricci traces, sectional and holomorphic
//! sectional curvatures, and one verifier per relation between them.

use serde::{Deserialize, Serialize};

use crate::connections::{
    sphere_curvature_oracle, ConnectionKind, CurvatureSign, Geometry, VectorField,
};
use crate::error::{GeometryError, Result};
use crate::numlin::Alpha;
use crate::record::{DetailRow, VerificationRecord};
use crate::registry::{self, Identity};
use crate::sphere3s::{SpherePoint, TangentVector, ThreeSasakiStructure};
use crate::tolerances;

/// Where the Levi-Civita curvature `R` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeviCivitaSource {
    /// Closed form of the unit sphere with the given sign.
    Oracle(CurvatureSign),
    /// Nested numerical differentiation.
    Differential,
}

/// Sign convention of the sectional curvature.
///
/// `MinusR` is `K = -R(X,Y,X,Y) / gram`; `PlusR` drops the minus sign.
/// With `R(X,Y,Z,W) = g(R(X,Y)W, Z)` the round sphere has `K = 1` under
/// `PlusR`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionalConvention {
    MinusR,
    PlusR,
}

impl SectionalConvention {
    pub const ALL: [SectionalConvention; 2] =
        [SectionalConvention::MinusR, SectionalConvention::PlusR];

    /// Factor applied to `-R(X,Y,X,Y) / gram`.
    pub fn factor(self) -> f64 {
        match self {
            SectionalConvention::MinusR => 1.0,
            SectionalConvention::PlusR => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SectionalConvention::MinusR => "minus-R",
            SectionalConvention::PlusR => "plus-R",
        }
    }
}

/// Which argument slots of a cross-check triple carry Reeb components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleFamily {
    /// `X, Y, Z` in `H`.
    Horizontal,
    /// `X, Y` in `H`, `Z = ξ_α`.
    ReebLast,
    /// Generic tangent vectors.
    Mixed,
    /// `ξ_α` in the `X` or `Y` slot.
    ReebLeading,
}

impl TripleFamily {
    pub const ALL: [TripleFamily; 4] = [
        TripleFamily::Horizontal,
        TripleFamily::ReebLast,
        TripleFamily::Mixed,
        TripleFamily::ReebLeading,
    ];

    pub fn identity(self) -> &'static Identity {
        match self {
            TripleFamily::Horizontal => &registry::CROSS_CHECK_H,
            TripleFamily::ReebLast => &registry::CROSS_CHECK_REEB_LAST,
            TripleFamily::Mixed => &registry::CROSS_CHECK_MIXED,
            TripleFamily::ReebLeading => &registry::CROSS_CHECK_REEB_LEADING,
        }
    }
}

/// Both routes to `R̄(X,Y)Z` at one sample.
#[derive(Debug, Clone)]
pub struct CurvatureSample {
    pub point: SpherePoint,
    pub args: Vec<TangentVector>,
    pub value_direct: TangentVector,
    pub value_algebraic: TangentVector,
    pub residual: f64,
}

/// Unit `X` together with its `φ_α`-plane.
#[derive(Debug, Clone)]
pub struct SectionalQuery {
    pub alpha: Alpha,
    pub x: TangentVector,
}

impl SectionalQuery {
    pub fn new(s: &ThreeSasakiStructure, alpha: Alpha, x: TangentVector) -> Result<Self> {
        check_unit(&x)?;
        let c = x.vector().dot(s.phi(alpha, &x).vector()).abs();
        if c >= 1.0 - 1e-8 || s.phi(alpha, &x).norm() < 1e-8 {
            return Err(GeometryError::DegeneratePlane { gram: 1.0 - c * c });
        }
        Ok(SectionalQuery { alpha, x })
    }

    pub fn phi_x(&self, s: &ThreeSasakiStructure) -> TangentVector {
        s.phi(self.alpha, &self.x)
    }
}

fn check_unit(x: &TangentVector) -> Result<()> {
    let dev = (x.norm() - 1.0).abs();
    if !(dev <= tolerances::UNIT_INPUT) {
        return Err(GeometryError::Precondition(format!(
            "expected a unit vector, |X| - 1 = {dev:e}"
        )));
    }
    Ok(())
}

fn check_horizontal(s: &ThreeSasakiStructure, x: &TangentVector) -> Result<()> {
    let dev = s.horizontal_defect(x);
    if !(dev <= tolerances::UNIT_INPUT) {
        return Err(GeometryError::Precondition(format!(
            "expected a vector of H, max |eta(X)| = {dev:e}"
        )));
    }
    Ok(())
}

fn levi_civita(
    geo: &Geometry,
    source: LeviCivitaSource,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> Result<TangentVector> {
    match source {
        LeviCivitaSource::Oracle(sign) => sphere_curvature_oracle(sign, x, y, z),
        LeviCivitaSource::Differential => {
            geo.curvature_vectors(ConnectionKind::LeviCivita, x, y, z)
        }
    }
}

/// `R̄(X,Y)Z` from `R(X,Y)Z` by the term-by-term expansion, double sums
/// over ordered pairs `α ≠ β`.
pub fn rbar_algebraic(
    geo: &Geometry,
    source: LeviCivitaSource,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> Result<TangentVector> {
    x.distance(y)?;
    x.distance(z)?;
    let s = geo.structure();
    let p = x.base();
    let mut out = levi_civita(geo, source, x, y, z)?;

    for a in Alpha::ALL {
        let xi = s.reeb(a, p);
        let (ex, ey, ez) = (s.eta(a, x), s.eta(a, y), s.eta(a, z));
        out = out
            .add_scaled(-2.0 * s.omega(a, y, x)?, &s.phi(a, z))?
            .add_scaled(-s.omega(a, z, x)?, &s.phi(a, y))?
            .add_scaled(s.omega(a, z, y)?, &s.phi(a, x))?
            .add_scaled(ex * ez, y)?
            .add_scaled(-ey * ez, x)?
            .add_scaled(2.0 * ey * s.metric(x, z)? - 2.0 * ex * s.metric(y, z)?, &xi)?;
    }

    for a in Alpha::ALL {
        let (ex, ey, ez) = (s.eta(a, x), s.eta(a, y), s.eta(a, z));
        let (pax, pay, paz) = (s.phi(a, x), s.phi(a, y), s.phi(a, z));
        for b in Alpha::ALL {
            if a == b {
                continue;
            }
            let xi = s.reeb(b, p);
            let pp = |v: &TangentVector| s.phi(b, v);
            out = out
                .add_scaled(-ez * s.eta(b, y), &pp(&pax))?
                .add_scaled(ez * s.eta(b, x), &pp(&pay))?
                .add_scaled(2.0 * ey * s.eta(b, x), &pp(&paz))?
                .add_scaled(2.0 * ez * s.omega(b, x, &pay)?, &xi)?
                .add_scaled(-ex * s.omega(b, y, &paz)?, &xi)?
                .add_scaled(ey * s.omega(b, x, &paz)?, &xi)?
                .add_scaled(ey * s.eta(b, &paz) + ez * s.eta(b, &pay), &s.phi(b, x))?
                .add_scaled(-ex * s.eta(b, &paz) - ez * s.eta(b, &pax), &s.phi(b, y))?;
        }
    }
    Ok(out)
}

/// Direct (`curvature(HConnection, …)`) versus algebraic `R̄(X,Y)Z`, with
/// `R` taken from the differential pipeline.
pub fn cross_check_rbar(
    geo: &Geometry,
    triples: &[[TangentVector; 3]],
) -> Result<Vec<CurvatureSample>> {
    triples
        .iter()
        .map(|[x, y, z]| {
            let direct = geo.curvature_vectors(ConnectionKind::HConnection, x, y, z)?;
            let algebraic = rbar_algebraic(geo, LeviCivitaSource::Differential, x, y, z)?;
            Ok(CurvatureSample {
                point: x.base().clone(),
                args: vec![x.clone(), y.clone(), z.clone()],
                residual: direct.distance(&algebraic)?,
                value_direct: direct,
                value_algebraic: algebraic,
            })
        })
        .collect()
}

/// Orthonormal basis used for Ricci traces: a seed-derived frame of `H`
/// followed by the Reeb fields.
fn trace_basis(
    s: &ThreeSasakiStructure,
    x: &SpherePoint,
    frame_seed: u64,
) -> Result<Vec<TangentVector>> {
    s.tangent_frame(x, frame_seed)
}

/// `S(X,Y) = Σ_i R(E_i, X, E_i, Y) = Σ_i g(R(E_i,X)Y, E_i)` over
/// `H`-frame plus Reeb fields, for either connection.
pub fn ricci(
    geo: &Geometry,
    kind: ConnectionKind,
    x: &TangentVector,
    y: &TangentVector,
    frame_seed: u64,
) -> Result<f64> {
    x.distance(y)?;
    let s = geo.structure();
    if kind == ConnectionKind::HConnection {
        check_horizontal(s, x)?;
        check_horizontal(s, y)?;
    }
    let (fx, fy) = (VectorField::extend(x), VectorField::extend(y));
    let mut total = 0.0;
    for e in trace_basis(s, x.base(), frame_seed)? {
        let r = geo.curvature(kind, &VectorField::extend(&e), &fx, &fy, x.base())?;
        total += s.metric(&r, &e)?;
    }
    Ok(total)
}

/// The same trace with `R̄` from [`rbar_algebraic`].
pub fn ricci_algebraic(
    geo: &Geometry,
    source: LeviCivitaSource,
    x: &TangentVector,
    y: &TangentVector,
    frame_seed: u64,
) -> Result<f64> {
    x.distance(y)?;
    let s = geo.structure();
    let mut total = 0.0;
    for e in trace_basis(s, x.base(), frame_seed)? {
        total += s.metric(&rbar_algebraic(geo, source, &e, x, y)?, &e)?;
    }
    Ok(total)
}

/// `-R(X,Y,X,Y) / (g(X,X) g(Y,Y) - g(X,Y)^2)` for the Levi-Civita connection.
fn minus_r_ratio(geo: &Geometry, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    let s = geo.structure();
    let gram = s.metric(x, x)? * s.metric(y, y)? - s.metric(x, y)?.powi(2);
    if !(gram > tolerances::PLANE_GRAM) {
        return Err(GeometryError::DegeneratePlane { gram });
    }
    let r = geo.curvature4_vectors(ConnectionKind::LeviCivita, x, y, x, y)?;
    Ok(-r / gram)
}

/// Sectional curvature of `span{X, Y}` under the given convention.
pub fn sectional(
    geo: &Geometry,
    x: &TangentVector,
    y: &TangentVector,
    convention: SectionalConvention,
) -> Result<f64> {
    Ok(convention.factor() * minus_r_ratio(geo, x, y)?)
}

/// `H̄_α(X) = R̄(X, φ_α X, X, φ_α X)` for unit `X` in `H`.
pub fn holomorphic_sectional_bar(geo: &Geometry, alpha: Alpha, x: &TangentVector) -> Result<f64> {
    let s = geo.structure();
    check_unit(x)?;
    check_horizontal(s, x)?;
    let px = s.phi(alpha, x);
    geo.curvature4_vectors(ConnectionKind::HConnection, x, &px, x, &px)
}

/// `φ_α`-sectional curvature of the Levi-Civita connection on
/// `span{X, φ_α X}`, both conventions, in the order of
/// [`SectionalConvention::ALL`].
pub fn phi_sectional(geo: &Geometry, alpha: Alpha, x: &TangentVector) -> Result<[f64; 2]> {
    let k = minus_r_ratio(geo, x, &geo.structure().phi(alpha, x))?;
    Ok(SectionalConvention::ALL.map(|c| c.factor() * k))
}

/// Picks the first convention whose residual is within tolerance.
fn select(residuals: &[f64; 2], tolerance: f64) -> (f64, Option<SectionalConvention>) {
    let best = residuals.iter().cloned().fold(f64::INFINITY, f64::min);
    let chosen = SectionalConvention::ALL
        .iter()
        .zip(residuals)
        .find(|(_, r)| **r <= tolerance)
        .map(|(c, _)| *c);
    (
        if residuals.iter().any(|r| r.is_nan()) {
            f64::NAN
        } else {
            best
        },
        chosen,
    )
}

fn convention_row(
    label: &str,
    k: &[f64; 2],
    residuals: &[f64; 2],
    extra: &[(&str, f64)],
) -> DetailRow {
    let mut values: Vec<(String, f64)> = extra.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for (i, c) in SectionalConvention::ALL.iter().enumerate() {
        values.push((format!("K[{}]", c.as_str()), k[i]));
        values.push((format!("residual[{}]", c.as_str()), residuals[i]));
    }
    DetailRow::new(label, values)
}

/// `H̄_α(X) - K(X, φ_α X) = 3`, checked under both sectional conventions.
pub fn verify_sec_rela(
    geo: &Geometry,
    alpha: Alpha,
    x: &TangentVector,
    tolerance: f64,
) -> Result<VerificationRecord> {
    let hbar = holomorphic_sectional_bar(geo, alpha, x)?;
    let k = phi_sectional(geo, alpha, x)?;
    let residuals = k.map(|ki| (hbar - ki - 3.0).abs());
    let (best, chosen) = select(&residuals, tolerance);
    let mut rec = VerificationRecord::check(&registry::SECTIONAL_SEC_RELA, best, tolerance)
        .with_value(hbar)
        .with_details(vec![convention_row(
            &format!("alpha={}", alpha.get()),
            &k,
            &residuals,
            &[("Hbar", hbar)],
        )]);
    if let Some(c) = chosen {
        rec = rec.with_convention(c.as_str());
    }
    Ok(rec)
}

/// `R̄(X, φ_1 X, φ_2 X, φ_3 X) = R(X, φ_1 X, φ_2 X, φ_3 X)` for `X` in `H`.
pub fn verify_cor_xxx(
    geo: &Geometry,
    x: &TangentVector,
    tolerance: f64,
) -> Result<VerificationRecord> {
    let s = geo.structure();
    check_horizontal(s, x)?;
    let [p1, p2, p3] = Alpha::ALL.map(|a| s.phi(a, x));
    let rbar = geo.curvature4_vectors(ConnectionKind::HConnection, x, &p1, &p2, &p3)?;
    let r = geo.curvature4_vectors(ConnectionKind::LeviCivita, x, &p1, &p2, &p3)?;
    Ok(
        VerificationRecord::check(&registry::CURVATURE_COR_XXX, (rbar - r).abs(), tolerance)
            .with_details(vec![DetailRow::new("sample", [("Rbar", rbar), ("R", r)])]),
    )
}

/// Right-hand side of the `φ_α`-plane relation minus `K`:
/// `3 + 4 (η^β η^γ)^2 + 6 ((η^β)^4 + (η^γ)^4) - 8 ((η^β)^2 + (η^γ)^2)`.
pub fn theorem_sec_offset(eb: f64, ec: f64) -> f64 {
    let (b2, c2) = (eb * eb, ec * ec);
    3.0 + 4.0 * b2 * c2 + 6.0 * (b2 * b2 + c2 * c2) - 8.0 * (b2 + c2)
}

/// Checks `K̄(Π) = K(Π) + offset(η^β(X), η^γ(X))` on the `φ_α`-plane of a
/// unit `X`, with `K̄ = R̄(X, φ_α X, X, φ_α X)`.
///
/// The identity is chosen from the position of `X`: in `H`, exactly a
/// Reeb vector, or mixed. Records for the latter two are informational.
pub fn verify_theorem_sec(
    geo: &Geometry,
    alpha: Alpha,
    x: &TangentVector,
    tolerance: f64,
) -> Result<VerificationRecord> {
    let s = geo.structure();
    let q = SectionalQuery::new(s, alpha, x.clone())?;
    let px = q.phi_x(s);
    let kbar = geo.curvature4_vectors(ConnectionKind::HConnection, x, &px, x, &px)?;
    let k = phi_sectional(geo, alpha, x)?;
    let (b, c) = alpha.complement();
    let (eb, ec) = (s.eta(b, x), s.eta(c, x));
    let offset = theorem_sec_offset(eb, ec);
    let residuals = [0, 1].map(|i| (kbar - k[i] - offset).abs());
    let (best, chosen) = select(&residuals, tolerance);

    let identity = if s.horizontal_defect(x) <= tolerances::UNIT_INPUT {
        &registry::THEOREM_SEC_H
    } else if (eb.abs() - 1.0).abs() <= 1e-12 || (ec.abs() - 1.0).abs() <= 1e-12 {
        &registry::THEOREM_SEC_REEB
    } else {
        &registry::THEOREM_SEC_MIXED
    };
    let row = convention_row(
        &format!("alpha={}", alpha.get()),
        &k,
        &residuals,
        &[
            ("Kbar", kbar),
            ("eta_b", eb),
            ("eta_c", ec),
            ("predicted_offset", offset),
        ],
    );
    let mut rec = VerificationRecord::check(identity, best, tolerance)
        .with_value(kbar)
        .with_details(vec![row]);
    if identity.id != registry::THEOREM_SEC_H.id {
        rec = rec.informational();
    }
    if let Some(c) = chosen {
        rec = rec.with_convention(c.as_str());
    }
    Ok(rec)
}

/// The four symmetry families of `R̄` on `H`-quadruples, one record per
/// family aggregated over the samples.
pub fn verify_symmetries(
    geo: &Geometry,
    quadruples: &[[TangentVector; 4]],
    tolerance: f64,
) -> Result<Vec<VerificationRecord>> {
    let s = geo.structure();
    let mut res = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for q in quadruples {
        for v in q {
            check_horizontal(s, v)?;
        }
        let [x, y, z, u] = q;
        let r = |a: &TangentVector, b: &TangentVector, c: &TangentVector, d: &TangentVector| {
            geo.curvature4_vectors(ConnectionKind::HConnection, a, b, c, d)
        };
        let xyzu = r(x, y, z, u)?;
        res[0].push((xyzu + r(y, x, z, u)?).abs());
        res[1].push((xyzu + r(x, y, u, z)?).abs());
        res[2].push((r(x, y, u, z)? + r(y, z, u, x)? + r(z, x, u, y)?).abs());
        res[3].push((xyzu - r(z, u, x, y)?).abs());
    }
    let ids = [
        &registry::CURVATURE_FIRST_PAIR,
        &registry::CURVATURE_LAST_PAIR,
        &registry::CURVATURE_BIANCHI,
        &registry::CURVATURE_PAIR_SWAP,
    ];
    Ok(ids
        .iter()
        .zip(res)
        .map(|(id, r)| VerificationRecord::aggregate(id, r, tolerance))
        .collect())
}

/// Unbiased sample variance; zero for fewer than two values.
pub fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
}

#[cfg(test)]
mod tests;
