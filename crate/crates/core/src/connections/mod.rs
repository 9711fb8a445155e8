//! Levi-Civita connection of the round metric, the H-connection, Lie
//! brackets, torsion and curvature.
//!
//! All derivatives are taken in the ambient space. For fields tangent to
//! the sphere the Levi-Civita derivative is the tangential projection of
//! the ambient directional derivative (Gauss formula), and the bracket is
//! the ambient bracket.

mod field;

pub use field::{ConnectionKind, ScalarField, VectorField};

use serde::{Deserialize, Serialize};

use field::Node;

use crate::error::{GeometryError, Result};
use crate::numlin::jet::{self, Jet};
use crate::numlin::{directional_derivative, Alpha, DiffScheme};
use crate::sphere3s::{SpherePoint, TangentVector, ThreeSasakiStructure};
use crate::tolerances;

/// Which of the two algebraically equivalent expressions of the
/// H-connection to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HForm {
    /// `∇_X Y - η^α(X) ∇_Y ξ_α - η^α(Y) ∇_X ξ_α + Ω^α(X,Y) ξ_α`, with the
    /// `∇ ξ_α` terms differentiated numerically.
    Defining,
    /// Same with `∇_X ξ_α = -φ_α X` substituted.
    Substituted,
}

/// Global sign `s` of the closed-form curvature `s (g(Y,Z) X - g(X,Z) Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum CurvatureSign {
    Plus,
    Minus,
}

impl CurvatureSign {
    pub fn value(self) -> f64 {
        match self {
            CurvatureSign::Plus => 1.0,
            CurvatureSign::Minus => -1.0,
        }
    }
}

impl From<CurvatureSign> for i8 {
    fn from(s: CurvatureSign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for CurvatureSign {
    type Error = GeometryError;
    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(CurvatureSign::Plus),
            -1 => Ok(CurvatureSign::Minus),
            _ => Err(GeometryError::InvalidConfig(format!(
                "curvature sign must be +1 or -1, got {v}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSignResolution {
    pub sign: CurvatureSign,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

/// `s (g(Y,Z) X - g(X,Z) Y)`: curvature of the unit sphere.
pub fn sphere_curvature_oracle(
    sign: CurvatureSign,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> Result<TangentVector> {
    x.distance(z)?;
    let gyz = y.vector().dot(z.vector());
    let gxz = x.vector().dot(z.vector());
    Ok(x.scaled(gyz).add_scaled(-gxz, y)?.scaled(sign.value()))
}

/// A structure together with the differentiation scheme used on it.
#[derive(Debug, Clone)]
pub struct Geometry {
    structure: ThreeSasakiStructure,
    scheme: DiffScheme,
}

impl Geometry {
    pub fn new(structure: ThreeSasakiStructure, scheme: DiffScheme) -> Result<Self> {
        scheme.validate()?;
        Ok(Geometry { structure, scheme })
    }

    pub fn structure(&self) -> &ThreeSasakiStructure {
        &self.structure
    }

    pub fn scheme(&self) -> DiffScheme {
        self.scheme
    }

    /// Evaluates a field on (jet) ambient coordinates.
    pub fn eval(&self, f: &VectorField, y: &[Jet]) -> Result<Vec<Jet>> {
        let s = &self.structure;
        Ok(match &*f.0 {
            Node::Extension(v) => {
                v.check_dim(y.len())?;
                ThreeSasakiStructure::project_tangent_at(&v.to_jets(), y)
            }
            Node::Reeb(a) => s.reeb_at(*a, y),
            Node::Phi(a, g) => s.phi_at(*a, &self.eval(g, y)?, y),
            Node::ProjectH(g) => s.project_h_at(&self.eval(g, y)?, y),
            Node::Combination(terms) => {
                let mut out = jet::vec::zeros(y.len());
                for (c, g) in terms {
                    jet::vec::axpy(&mut out, c.eval(y), &self.eval(g, y)?);
                }
                out
            }
            Node::Covariant { kind, along, field } => {
                let w = self.eval(along, y)?;
                self.connection_at(*kind, &w, field, y)?
            }
            Node::Bracket(a, b) => self.bracket_at(a, b, y)?,
        })
    }

    /// Ambient directional derivative of a field.
    fn derivative(&self, f: &VectorField, y: &[Jet], w: &[Jet]) -> Result<Vec<Jet>> {
        directional_derivative(|z: &[Jet]| self.eval(f, z), y, w, self.scheme)
    }

    fn levi_civita_at(&self, w: &[Jet], f: &VectorField, y: &[Jet]) -> Result<Vec<Jet>> {
        let d = self.derivative(f, y, w)?;
        Ok(ThreeSasakiStructure::project_tangent_at(&d, y))
    }

    /// `∇_w ξ_α`, differentiated.
    fn nabla_reeb_at(&self, alpha: Alpha, w: &[Jet], y: &[Jet]) -> Result<Vec<Jet>> {
        let d = directional_derivative(
            |z: &[Jet]| Ok(self.structure.reeb_at(alpha, z)),
            y,
            w,
            self.scheme,
        )?;
        Ok(ThreeSasakiStructure::project_tangent_at(&d, y))
    }

    fn h_connection_at(
        &self,
        w: &[Jet],
        f: &VectorField,
        y: &[Jet],
        form: HForm,
    ) -> Result<Vec<Jet>> {
        let s = &self.structure;
        let fv = self.eval(f, y)?;
        let mut out = self.levi_civita_at(w, f, y)?;
        for a in Alpha::ALL {
            let (eta_w, eta_f) = (s.eta_at(a, w, y), s.eta_at(a, &fv, y));
            match form {
                HForm::Defining => {
                    jet::vec::axpy(&mut out, -eta_w, &self.nabla_reeb_at(a, &fv, y)?);
                    jet::vec::axpy(&mut out, -eta_f, &self.nabla_reeb_at(a, w, y)?);
                }
                HForm::Substituted => {
                    jet::vec::axpy(&mut out, eta_w, &s.phi_at(a, &fv, y));
                    jet::vec::axpy(&mut out, eta_f, &s.phi_at(a, w, y));
                }
            }
            jet::vec::axpy(&mut out, s.omega_at(a, w, &fv, y), &s.reeb_at(a, y));
        }
        Ok(out)
    }

    /// Covariant derivative of `f` along the vector `w` at `y`.
    pub(crate) fn connection_at(
        &self,
        kind: ConnectionKind,
        w: &[Jet],
        f: &VectorField,
        y: &[Jet],
    ) -> Result<Vec<Jet>> {
        match kind {
            ConnectionKind::LeviCivita => self.levi_civita_at(w, f, y),
            ConnectionKind::HConnection => self.h_connection_at(w, f, y, HForm::Defining),
        }
    }

    fn bracket_at(&self, a: &VectorField, b: &VectorField, y: &[Jet]) -> Result<Vec<Jet>> {
        let av = self.eval(a, y)?;
        let bv = self.eval(b, y)?;
        Ok(jet::vec::sub(
            &self.derivative(b, y, &av)?,
            &self.derivative(a, y, &bv)?,
        ))
    }

    fn tangent(&self, x: &SpherePoint, raw: &[Jet], tolerance: f64) -> Result<TangentVector> {
        let deviation = jet::vec::dot(raw, &x.to_jets()).value().abs();
        if deviation.is_nan() {
            return Err(GeometryError::NonFinite {
                context: "vector field value".to_string(),
            });
        }
        if deviation > tolerance {
            return Err(GeometryError::NotTangent { deviation });
        }
        TangentVector::from_kernel(x, raw)
    }

    pub fn field_at(&self, f: &VectorField, x: &SpherePoint) -> Result<TangentVector> {
        self.structure.check_point(x)?;
        let raw = self.eval(f, &x.to_jets())?;
        self.tangent(x, &raw, tolerances::FIELD_TANGENCY)
    }

    /// `[X, Y](x) = D_X Y - D_Y X`.
    pub fn lie_bracket(
        &self,
        a: &VectorField,
        b: &VectorField,
        x: &SpherePoint,
    ) -> Result<TangentVector> {
        self.structure.check_point(x)?;
        let raw = self.bracket_at(a, b, &x.to_jets())?;
        self.tangent(x, &raw, tolerances::BRACKET_TANGENCY)
    }

    /// `∇_X Y` or `∇̄_X Y` at `x`. For the H-connection both expressions are
    /// evaluated and must agree.
    pub fn cov_deriv(
        &self,
        kind: ConnectionKind,
        a: &VectorField,
        b: &VectorField,
        x: &SpherePoint,
    ) -> Result<TangentVector> {
        match kind {
            ConnectionKind::LeviCivita => {
                self.structure.check_point(x)?;
                let y = x.to_jets();
                let w = self.eval(a, &y)?;
                self.tangent(
                    x,
                    &self.levi_civita_at(&w, b, &y)?,
                    tolerances::FIELD_TANGENCY,
                )
            }
            ConnectionKind::HConnection => {
                let (defining, substituted) = self.h_connection_forms(a, b, x)?;
                let residual = defining.distance(&substituted)?;
                if !(residual <= tolerances::H_CONNECTION_FORMS) {
                    return Err(GeometryError::InternalConsistency {
                        check: "H-connection defining vs substituted form",
                        residual,
                        tolerance: tolerances::H_CONNECTION_FORMS,
                    });
                }
                Ok(defining)
            }
        }
    }

    /// Both expressions of `∇̄_X Y`: `(defining, substituted)`.
    pub fn h_connection_forms(
        &self,
        a: &VectorField,
        b: &VectorField,
        x: &SpherePoint,
    ) -> Result<(TangentVector, TangentVector)> {
        self.structure.check_point(x)?;
        let y = x.to_jets();
        let w = self.eval(a, &y)?;
        let defining = self.h_connection_at(&w, b, &y, HForm::Defining)?;
        let substituted = self.h_connection_at(&w, b, &y, HForm::Substituted)?;
        Ok((
            self.tangent(x, &defining, tolerances::FIELD_TANGENCY)?,
            self.tangent(x, &substituted, tolerances::FIELD_TANGENCY)?,
        ))
    }

    /// `X g(Y, Z)` at `x`.
    pub fn metric_derivative(
        &self,
        a: &VectorField,
        b: &VectorField,
        c: &VectorField,
        x: &SpherePoint,
    ) -> Result<f64> {
        self.structure.check_point(x)?;
        let y = x.to_jets();
        let w = self.eval(a, &y)?;
        let pairing = |z: &[Jet]| -> Result<Vec<Jet>> {
            Ok(vec![jet::vec::dot(&self.eval(b, z)?, &self.eval(c, z)?)])
        };
        Ok(directional_derivative(pairing, &y, &w, self.scheme)?[0].value())
    }

    /// `(∇_X φ_α) Y - g(X,Y) ξ_α + η^α(Y) X`; vanishes on a Sasakian structure.
    pub fn sasaki_defect(
        &self,
        alpha: Alpha,
        a: &VectorField,
        b: &VectorField,
        x: &SpherePoint,
    ) -> Result<TangentVector> {
        let s = &self.structure;
        let nabla_phi = self.phi_parallel_defect(ConnectionKind::LeviCivita, alpha, a, b, x)?;
        let (xv, yv) = (self.field_at(a, x)?, self.field_at(b, x)?);
        nabla_phi
            .add_scaled(-s.metric(&xv, &yv)?, &s.reeb(alpha, x))?
            .add_scaled(s.eta(alpha, &yv), &xv)
    }

    /// `(∇_X φ_α) Y = ∇_X(φ_α Y) - φ_α(∇_X Y)` for the chosen connection.
    pub fn phi_parallel_defect(
        &self,
        kind: ConnectionKind,
        alpha: Alpha,
        a: &VectorField,
        b: &VectorField,
        x: &SpherePoint,
    ) -> Result<TangentVector> {
        self.structure.check_point(x)?;
        let y = x.to_jets();
        let w = self.eval(a, &y)?;
        let lhs = self.connection_at(kind, &w, &b.phi(alpha), &y)?;
        let inner = self.connection_at(kind, &w, b, &y)?;
        let rhs = self.structure.phi_at(alpha, &inner, &y);
        self.tangent(x, &jet::vec::sub(&lhs, &rhs), tolerances::FIELD_TANGENCY)
    }

    /// `(∇̄_X φ_α) Y` with both fields first projected onto `H`.
    pub fn nabla_bar_phi_defect(
        &self,
        alpha: Alpha,
        a: &VectorField,
        b: &VectorField,
        x: &SpherePoint,
    ) -> Result<TangentVector> {
        self.phi_parallel_defect(
            ConnectionKind::HConnection,
            alpha,
            &a.project_h(),
            &b.project_h(),
            x,
        )
    }

    /// `T(X, Y) = ∇_X Y - ∇_Y X - [X, Y]`.
    pub fn torsion(
        &self,
        kind: ConnectionKind,
        a: &VectorField,
        b: &VectorField,
        x: &SpherePoint,
    ) -> Result<TangentVector> {
        let ab = self.cov_deriv(kind, a, b, x)?;
        let ba = self.cov_deriv(kind, b, a, x)?;
        ab.sub(&ba)?.sub(&self.lie_bracket(a, b, x)?)
    }

    /// `R(X,Y)Z = ∇_X ∇_Y Z - ∇_Y ∇_X Z - ∇_{[X,Y]} Z` by nested differentiation.
    pub fn curvature(
        &self,
        kind: ConnectionKind,
        a: &VectorField,
        b: &VectorField,
        c: &VectorField,
        x: &SpherePoint,
    ) -> Result<TangentVector> {
        self.structure.check_point(x)?;
        let y = x.to_jets();
        let av = self.eval(a, &y)?;
        let bv = self.eval(b, &y)?;
        let xy = self.connection_at(kind, &av, &VectorField::covariant(kind, b, c), &y)?;
        let yx = self.connection_at(kind, &bv, &VectorField::covariant(kind, a, c), &y)?;
        let bracket = self.lie_bracket(a, b, x)?;
        let br = self.connection_at(kind, &bracket.vector().to_jets(), c, &y)?;
        let raw = jet::vec::sub(&jet::vec::sub(&xy, &yx), &br);
        self.tangent(x, &raw, tolerances::FIELD_TANGENCY)
    }

    /// `R(X,Y,Z,W) = g(R(X,Y)W, Z)`.
    pub fn curvature4(
        &self,
        kind: ConnectionKind,
        a: &VectorField,
        b: &VectorField,
        c: &VectorField,
        d: &VectorField,
        x: &SpherePoint,
    ) -> Result<f64> {
        let r = self.curvature(kind, a, b, d, x)?;
        self.structure.metric(&r, &self.field_at(c, x)?)
    }

    /// Vector-argument form of [`curvature4`](Self::curvature4), using the
    /// canonical extensions.
    pub fn curvature4_vectors(
        &self,
        kind: ConnectionKind,
        a: &TangentVector,
        b: &TangentVector,
        c: &TangentVector,
        d: &TangentVector,
    ) -> Result<f64> {
        self.curvature4(
            kind,
            &VectorField::extend(a),
            &VectorField::extend(b),
            &VectorField::extend(c),
            &VectorField::extend(d),
            a.base(),
        )
    }

    /// Vector-argument form of [`curvature`](Self::curvature).
    pub fn curvature_vectors(
        &self,
        kind: ConnectionKind,
        a: &TangentVector,
        b: &TangentVector,
        c: &TangentVector,
    ) -> Result<TangentVector> {
        a.distance(b)?;
        a.distance(c)?;
        self.curvature(
            kind,
            &VectorField::extend(a),
            &VectorField::extend(b),
            &VectorField::extend(c),
            a.base(),
        )
    }

    /// Fixes the sign of the closed-form sphere curvature by comparing the
    /// numerical `R(ξ_1, X) Y` with `g(X,Y) ξ_1 - η^1(Y) X`.
    pub fn resolve_curvature_sign(
        &self,
        x: &TangentVector,
        y: &TangentVector,
    ) -> Result<CurvatureSignResolution> {
        let s = &self.structure;
        let p = x.base();
        let xi = s.reeb(Alpha::ONE, p);
        let direct = self.curvature(
            ConnectionKind::LeviCivita,
            &VectorField::reeb(Alpha::ONE),
            &VectorField::extend(x),
            &VectorField::extend(y),
            p,
        )?;
        let target = xi
            .scaled(s.metric(x, y)?)
            .add_scaled(-s.eta(Alpha::ONE, y), x)?;
        let residual_plus = direct.distance(&target)?;
        let residual_minus = direct.distance(&target.scaled(-1.0))?;
        let sign = if residual_plus <= residual_minus {
            CurvatureSign::Plus
        } else {
            CurvatureSign::Minus
        };
        let best = residual_plus.min(residual_minus);
        if !(best <= tolerances::SIGN_RESOLUTION) {
            return Err(GeometryError::InternalConsistency {
                check: "curvature sign resolution",
                residual: best,
                tolerance: tolerances::SIGN_RESOLUTION,
            });
        }
        Ok(CurvatureSignResolution {
            sign,
            residual_plus,
            residual_minus,
        })
    }
}
