//! The round sphere `S^{4n+3} ⊂ R^{4(n+1)}` with its canonical 3-Sasakian
//! structure.
//!
//! Tensors are evaluated pointwise from the ambient complex structures:
//! `ξ_α(x) = ±I_α x`, `φ_α X = I_α X - <I_α X, x> x`, `η^α = g(ξ_α, ·)`,
//! `Ω^α(X, Y) = g(X, φ_α Y)`, with `g` the restricted dot product.
//!
//! Two layers are exposed. The `*_at` kernels work on raw jet coordinates
//! and are what vector fields and differentiation are built from; they do
//! not validate anything. The typed operations take [`SpherePoint`] and
//! [`TangentVector`] and check base points and dimensions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::numlin::jet::{self, Jet};
use crate::numlin::{
    directional_derivative, gram_schmidt, quaternion_structures, Alpha, AmbientVector,
    ComplexStructureTriple, DiffScheme,
};
use crate::record::VerificationRecord;
use crate::registry;

/// Allowed deviation of `<x, x>` from 1.
pub const POINT_TOLERANCE: f64 = 1e-12;
/// Allowed `|<v, x>|` for a tangent vector `v` at `x`.
pub const TANGENT_TOLERANCE: f64 = 1e-10;
/// Attempts made by [`ThreeSasakiStructure::frame_h`] before giving up.
pub const FRAME_RETRIES: usize = 10;

/// A point of the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SpherePoint(AmbientVector);

impl SpherePoint {
    pub fn new(x: AmbientVector) -> Result<Self> {
        let deviation = (x.dot(&x) - 1.0).abs();
        if !(deviation <= POINT_TOLERANCE) {
            return Err(GeometryError::NotOnSphere { deviation });
        }
        Ok(SpherePoint(x))
    }

    /// Radial projection of a nonzero vector onto the sphere.
    pub fn normalize(v: AmbientVector) -> Result<Self> {
        let norm = v.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(GeometryError::Degenerate {
                index: 1,
                pivot: norm,
                threshold: 0.0,
            });
        }
        Ok(SpherePoint(v.scaled(1.0 / norm)))
    }

    #[inline]
    pub fn coords(&self) -> &AmbientVector {
        &self.0
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn to_jets(&self) -> Vec<Jet> {
        self.0.to_jets()
    }
}

fn check_same_base(a: &SpherePoint, b: &SpherePoint) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(GeometryError::Dimension {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let distance = a.coords().distance(b.coords());
    if distance > POINT_TOLERANCE {
        return Err(GeometryError::BaseMismatch { distance });
    }
    Ok(())
}

/// An ambient vector tangent to the sphere at `base`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentVector {
    base: SpherePoint,
    v: AmbientVector,
}

impl TangentVector {
    pub fn new(base: SpherePoint, v: AmbientVector) -> Result<Self> {
        v.check_dim(base.dim())?;
        let deviation = v.dot(base.coords()).abs();
        if !(deviation <= TANGENT_TOLERANCE) {
            return Err(GeometryError::NotTangent { deviation });
        }
        Ok(TangentVector { base, v })
    }

    /// Orthogonal projection of an arbitrary ambient vector onto `T_x S`.
    pub fn project(base: &SpherePoint, v: &AmbientVector) -> Result<Self> {
        v.check_dim(base.dim())?;
        let c = v.dot(base.coords());
        Ok(TangentVector {
            base: base.clone(),
            v: v.add_scaled(-c, base.coords()),
        })
    }

    /// Wraps jet coordinates produced by a kernel, projecting away the
    /// rounding-level normal component.
    pub(crate) fn from_kernel(base: &SpherePoint, v: &[Jet]) -> Result<Self> {
        let v = AmbientVector::from_jets(v);
        if !v.is_finite() {
            return Err(GeometryError::NonFinite {
                context: "tangent vector".to_string(),
            });
        }
        TangentVector::project(base, &v)
    }

    pub fn zero(base: &SpherePoint) -> Self {
        TangentVector {
            base: base.clone(),
            v: AmbientVector::zeros(base.dim()),
        }
    }

    #[inline]
    pub fn base(&self) -> &SpherePoint {
        &self.base
    }

    #[inline]
    pub fn vector(&self) -> &AmbientVector {
        &self.v
    }

    pub fn norm(&self) -> f64 {
        self.v.norm()
    }

    pub fn scaled(&self, s: f64) -> Self {
        TangentVector {
            base: self.base.clone(),
            v: self.v.scaled(s),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &TangentVector) -> Result<Self> {
        check_same_base(&self.base, &other.base)?;
        Ok(TangentVector {
            base: self.base.clone(),
            v: self.v.add_scaled(s, &other.v),
        })
    }

    pub fn add(&self, other: &TangentVector) -> Result<Self> {
        self.add_scaled(1.0, other)
    }

    pub fn sub(&self, other: &TangentVector) -> Result<Self> {
        self.add_scaled(-1.0, other)
    }

    /// Euclidean distance between the vector parts; errors on base mismatch.
    pub fn distance(&self, other: &TangentVector) -> Result<f64> {
        check_same_base(&self.base, &other.base)?;
        Ok(self.v.distance(&other.v))
    }
}

/// Sign relating the Reeb fields to the ambient structures: `ξ_α = sign · I_α x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum ReebSign {
    Plus,
    Minus,
}

impl ReebSign {
    pub fn value(self) -> f64 {
        match self {
            ReebSign::Plus => 1.0,
            ReebSign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            ReebSign::Plus => ReebSign::Minus,
            ReebSign::Minus => ReebSign::Plus,
        }
    }
}

impl From<ReebSign> for i8 {
    fn from(s: ReebSign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for ReebSign {
    type Error = GeometryError;
    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(ReebSign::Plus),
            -1 => Ok(ReebSign::Minus),
            _ => Err(GeometryError::InvalidConfig(format!(
                "Reeb sign must be +1 or -1, got {v}"
            ))),
        }
    }
}

/// Outcome of fixing the Reeb sign by requiring `∇_X ξ_α = -φ_α X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignResolution {
    pub sign: ReebSign,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

/// An orthonormal frame of the contact distribution `H` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct HFrame {
    base: SpherePoint,
    vectors: Vec<TangentVector>,
}

impl HFrame {
    pub fn base(&self) -> &SpherePoint {
        &self.base
    }

    pub fn vectors(&self) -> &[TangentVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeSasakiStructure {
    n: usize,
    triple: ComplexStructureTriple,
    sign: ReebSign,
}

impl ThreeSasakiStructure {
    pub fn new(n: usize, triple: ComplexStructureTriple, sign: ReebSign) -> Result<Self> {
        let dim = 4 * (n + 1);
        if triple.dim() != dim {
            return Err(GeometryError::Dimension {
                expected: dim,
                found: triple.dim(),
            });
        }
        Ok(ThreeSasakiStructure { n, triple, sign })
    }

    /// Canonical structure on `S^{4n+3}` with the Reeb sign resolved numerically.
    pub fn canonical(n: usize) -> Result<Self> {
        let triple = quaternion_structures(n);
        let res = Self::resolve_reeb_sign(n, &triple)?;
        Self::new(n, triple, res.sign)
    }

    /// Picks the sign for which `∇_X ξ_α + φ_α X` vanishes at a fixed
    /// probe point. Errors if neither sign does.
    pub fn resolve_reeb_sign(n: usize, triple: &ComplexStructureTriple) -> Result<SignResolution> {
        let dim = 4 * (n + 1);
        let x = SpherePoint::normalize(AmbientVector::new(
            (0..dim)
                .map(|i| 1.0 + 0.37 * i as f64 - 0.05 * (i * i) as f64)
                .collect(),
        ))?;
        let probe = TangentVector::project(
            &x,
            &AmbientVector::new((0..dim).map(|i| ((i * 7 + 3) % 5) as f64 - 2.0).collect()),
        )?;
        let residual = |sign: ReebSign| -> Result<f64> {
            let s = ThreeSasakiStructure::new(n, triple.clone(), sign)?;
            let mut worst: f64 = 0.0;
            for a in Alpha::ALL {
                let d = directional_derivative(
                    |y: &[Jet]| Ok(s.reeb_at(a, y)),
                    &x.to_jets(),
                    &probe.vector().to_jets(),
                    DiffScheme::ExactForward,
                )?;
                let nabla = TangentVector::from_kernel(&x, &d)?;
                let phi = s.phi(a, &probe);
                worst = worst.max(nabla.add(&phi)?.vector().max_abs());
            }
            Ok(worst)
        };
        let residual_plus = residual(ReebSign::Plus)?;
        let residual_minus = residual(ReebSign::Minus)?;
        let tolerance = 1e-9;
        let sign = if residual_minus <= tolerance {
            ReebSign::Minus
        } else if residual_plus <= tolerance {
            ReebSign::Plus
        } else {
            return Err(GeometryError::InternalConsistency {
                check: "Reeb sign resolution",
                residual: residual_plus.min(residual_minus),
                tolerance,
            });
        };
        Ok(SignResolution {
            sign,
            residual_plus,
            residual_minus,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        4 * (self.n + 1)
    }

    /// Rank of the contact distribution, `4n`.
    #[inline]
    pub fn h_dim(&self) -> usize {
        4 * self.n
    }

    pub fn triple(&self) -> &ComplexStructureTriple {
        &self.triple
    }

    pub fn sign(&self) -> ReebSign {
        self.sign
    }

    pub fn check_point(&self, x: &SpherePoint) -> Result<()> {
        if x.dim() != self.ambient_dim() {
            return Err(GeometryError::Dimension {
                expected: self.ambient_dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    // ---- jet kernels ----

    pub fn reeb_at(&self, alpha: Alpha, y: &[Jet]) -> Vec<Jet> {
        let iy = self.triple.get(alpha).apply_jets(y);
        match self.sign {
            ReebSign::Plus => iy,
            ReebSign::Minus => iy.into_iter().map(|c| -c).collect(),
        }
    }

    /// Tangential part of `I_α v` at `y`.
    pub fn phi_at(&self, alpha: Alpha, v: &[Jet], y: &[Jet]) -> Vec<Jet> {
        let iv = self.triple.get(alpha).apply_jets(v);
        let c = jet::vec::dot(&iv, y);
        iv.iter().zip(y).map(|(a, b)| *a - c * *b).collect()
    }

    /// `η^α(v) = sign · <I_α y, v> = -sign · <y, I_α v>`.
    pub fn eta_at(&self, alpha: Alpha, v: &[Jet], y: &[Jet]) -> Jet {
        let iv = self.triple.get(alpha).apply_jets(v);
        jet::vec::dot(y, &iv) * (-self.sign.value())
    }

    pub fn omega_at(&self, alpha: Alpha, u: &[Jet], v: &[Jet], y: &[Jet]) -> Jet {
        jet::vec::dot(u, &self.phi_at(alpha, v, y))
    }

    pub fn project_tangent_at(v: &[Jet], y: &[Jet]) -> Vec<Jet> {
        let c = jet::vec::dot(v, y);
        v.iter().zip(y).map(|(a, b)| *a - c * *b).collect()
    }

    pub fn project_h_at(&self, v: &[Jet], y: &[Jet]) -> Vec<Jet> {
        let mut out = v.to_vec();
        for a in Alpha::ALL {
            let e = self.eta_at(a, v, y);
            jet::vec::axpy(&mut out, -e, &self.reeb_at(a, y));
        }
        out
    }

    // ---- typed operations ----

    pub fn metric(&self, x: &TangentVector, y: &TangentVector) -> Result<f64> {
        check_same_base(x.base(), y.base())?;
        Ok(x.vector().dot(y.vector()))
    }

    pub fn reeb(&self, alpha: Alpha, x: &SpherePoint) -> TangentVector {
        let v = self.reeb_at(alpha, &x.to_jets());
        TangentVector {
            base: x.clone(),
            v: AmbientVector::from_jets(&v),
        }
    }

    pub fn phi(&self, alpha: Alpha, x: &TangentVector) -> TangentVector {
        let y = x.base().to_jets();
        let v = self.phi_at(alpha, &x.vector().to_jets(), &y);
        TangentVector {
            base: x.base().clone(),
            v: AmbientVector::from_jets(&v),
        }
    }

    pub fn eta(&self, alpha: Alpha, x: &TangentVector) -> f64 {
        self.eta_at(alpha, &x.vector().to_jets(), &x.base().to_jets())
            .value()
    }

    pub fn omega(&self, alpha: Alpha, x: &TangentVector, y: &TangentVector) -> Result<f64> {
        check_same_base(x.base(), y.base())?;
        self.metric(x, &self.phi(alpha, y))
    }

    /// `X - Σ_α η^α(X) ξ_α`.
    pub fn project_h(&self, x: &TangentVector) -> TangentVector {
        let v = self.project_h_at(&x.vector().to_jets(), &x.base().to_jets());
        TangentVector {
            base: x.base().clone(),
            v: AmbientVector::from_jets(&v),
        }
    }

    /// `max_α |η^α(X)|`.
    pub fn horizontal_defect(&self, x: &TangentVector) -> f64 {
        Alpha::ALL
            .iter()
            .map(|&a| self.eta(a, x).abs())
            .fold(0.0, f64::max)
    }

    /// Seed-deterministic orthonormal frame of `H_x`; empty when `n = 0`.
    pub fn frame_h(&self, x: &SpherePoint, seed: u64) -> Result<HFrame> {
        self.check_point(x)?;
        let k = self.h_dim();
        if k == 0 {
            return Ok(HFrame {
                base: x.clone(),
                vectors: Vec::new(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last_err = None;
        for _ in 0..FRAME_RETRIES {
            let raw: Vec<AmbientVector> = (0..k)
                .map(|_| {
                    let g = AmbientVector::new(
                        (0..self.ambient_dim())
                            .map(|_| StandardNormal.sample(&mut rng))
                            .collect(),
                    );
                    let t = TangentVector::project(x, &g).expect("dimension checked");
                    self.project_h(&t).v
                })
                .collect();
            match gram_schmidt(&raw, AmbientVector::dot) {
                Ok(q) => {
                    let vectors = q
                        .into_iter()
                        .map(|v| TangentVector::new(x.clone(), v))
                        .collect::<Result<Vec<_>>>()?;
                    return Ok(HFrame {
                        base: x.clone(),
                        vectors,
                    });
                }
                Err(e @ GeometryError::Degenerate { .. }) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last_err.expect("at least one attempt"))
    }

    /// `frame_h(x, seed)` followed by `ξ_1, ξ_2, ξ_3`: an orthonormal basis of `T_x S`.
    pub fn tangent_frame(&self, x: &SpherePoint, seed: u64) -> Result<Vec<TangentVector>> {
        let mut frame = self.frame_h(x, seed)?.vectors;
        frame.extend(Alpha::ALL.iter().map(|&a| self.reeb(a, x)));
        Ok(frame)
    }

    /// `h_{αβ}(X) = ½ (L_{ξ_α} φ_β)(X)`, evaluated with the projection
    /// extension `X̃(y) = v - <v, y> y` of `X`.
    pub fn h_tensor(&self, alpha: Alpha, beta: Alpha, x: &TangentVector) -> Result<TangentVector> {
        let base = x.base();
        self.check_point(base)?;
        let y0 = base.to_jets();
        let v = x.vector().to_jets();
        let scheme = DiffScheme::ExactForward;
        let ext = |y: &[Jet]| Self::project_tangent_at(&v, y);
        let reeb = |y: &[Jet]| Ok(self.reeb_at(alpha, y));
        let phi_ext = |y: &[Jet]| Ok(self.phi_at(beta, &ext(y), y));

        let xi0 = self.reeb_at(alpha, &y0);
        // [ξ, φX̃] = D_ξ(φX̃) - D_{φX̃} ξ
        let lie_phi = jet::vec::sub(
            &directional_derivative(phi_ext, &y0, &xi0, scheme)?,
            &directional_derivative(reeb, &y0, &phi_ext(&y0)?, scheme)?,
        );
        let lie_x = jet::vec::sub(
            &directional_derivative(|y: &[Jet]| Ok(ext(y)), &y0, &xi0, scheme)?,
            &directional_derivative(reeb, &y0, &ext(&y0), scheme)?,
        );
        let h = jet::vec::sub(&lie_phi, &self.phi_at(beta, &lie_x, &y0));
        TangentVector::from_kernel(base, &jet::vec::scale(Jet::constant(0.5), &h))
    }

    /// The expected value of `h_{αβ}(X)` from the structure table.
    pub fn h_tensor_table(&self, alpha: Alpha, beta: Alpha, x: &TangentVector) -> TangentVector {
        if alpha == beta {
            return TangentVector::zero(x.base());
        }
        for (b, c, t) in Alpha::EVEN_PERMUTATIONS {
            if (alpha, beta) == (b, c) {
                return self.phi(t, x);
            }
            if (alpha, beta) == (c, b) {
                return self.phi(t, x).scaled(-1.0);
            }
        }
        unreachable!("distinct indices form a permutation")
    }

    /// Checks every almost-contact, compatibility and 3-structure axiom on
    /// each sample pair `(X, Y)`. Emits one record per axiom per sample.
    pub fn check_structure_axioms(
        &self,
        samples: &[(TangentVector, TangentVector)],
        tolerance: f64,
    ) -> Result<Vec<VerificationRecord>> {
        let mut out = Vec::with_capacity(samples.len() * registry::ALL.len());
        let triple_residual = if self.triple.is_valid() { 0.0 } else { 1.0 };
        for (x, y) in samples {
            check_same_base(x.base(), y.base())?;
            self.check_point(x.base())?;
            let p = x.base();
            let xi: Vec<TangentVector> = Alpha::ALL.iter().map(|&a| self.reeb(a, p)).collect();
            let xi_of = |a: Alpha| &xi[a.index()];
            let diff = |a: &TangentVector, b: &TangentVector| a.vector().distance(b.vector());
            let g = |a: &TangentVector, b: &TangentVector| a.vector().dot(b.vector());

            out.push(VerificationRecord::check(
                &registry::AXIOMS_TRIPLE,
                triple_residual,
                tolerance,
            ));

            let mut r_phi2: f64 = 0.0;
            let mut r_eta_xi: f64 = 0.0;
            let mut r_phi_xi: f64 = 0.0;
            let mut r_compat_eta: f64 = 0.0;
            let mut r_compat_g: f64 = 0.0;
            let mut r_omega: f64 = 0.0;
            let mut r_reeb: f64 = 0.0;
            for a in Alpha::ALL {
                let ea = self.eta(a, x);
                let phi2 = self.phi(a, &self.phi(a, x));
                let expect = x.scaled(-1.0).add_scaled(ea, xi_of(a))?;
                r_phi2 = r_phi2.max(diff(&phi2, &expect));

                for b in Alpha::ALL {
                    let delta = if a == b { 1.0 } else { 0.0 };
                    r_eta_xi = r_eta_xi.max((self.eta(a, xi_of(b)) - delta).abs());
                    r_reeb = r_reeb.max((g(xi_of(a), xi_of(b)) - delta).abs());
                }
                r_reeb = r_reeb.max(xi_of(a).vector().dot(p.coords()).abs());

                r_phi_xi = r_phi_xi
                    .max(self.phi(a, xi_of(a)).norm())
                    .max(self.eta(a, &self.phi(a, x)).abs());

                r_compat_eta = r_compat_eta.max((ea - g(xi_of(a), x)).abs());

                let lhs = g(&self.phi(a, x), &self.phi(a, y));
                r_compat_g = r_compat_g.max((lhs - g(x, y) + ea * self.eta(a, y)).abs());

                r_omega = r_omega
                    .max((self.omega(a, x, y)? + self.omega(a, y, x)?).abs())
                    .max(self.omega(a, x, x)?.abs());
            }

            let mut r_q_phi: f64 = 0.0;
            let mut r_q_xi: f64 = 0.0;
            let mut r_q_eta: f64 = 0.0;
            for (b, c, t) in Alpha::EVEN_PERMUTATIONS {
                let phi_t = self.phi(t, x);
                let bc = self
                    .phi(b, &self.phi(c, x))
                    .add_scaled(-self.eta(c, x), xi_of(b))?;
                let cb = self
                    .phi(c, &self.phi(b, x))
                    .scaled(-1.0)
                    .add_scaled(self.eta(b, x), xi_of(c))?;
                r_q_phi = r_q_phi.max(diff(&phi_t, &bc)).max(diff(&phi_t, &cb));

                r_q_xi = r_q_xi
                    .max(diff(xi_of(t), &self.phi(b, xi_of(c))))
                    .max(diff(xi_of(t), &self.phi(c, xi_of(b)).scaled(-1.0)));

                let et = self.eta(t, x);
                r_q_eta = r_q_eta
                    .max((et - self.eta(b, &self.phi(c, x))).abs())
                    .max((et + self.eta(c, &self.phi(b, x))).abs());
            }

            let px = self.project_h(x);
            let py = self.project_h(y);
            let r_split = diff(&self.project_h(&px), &px)
                .max(self.horizontal_defect(&px))
                .max((g(&px, y) - g(x, &py)).abs());

            for (id, r) in [
                (&registry::AXIOMS_PHI_SQUARED, r_phi2),
                (&registry::AXIOMS_ETA_OF_REEB, r_eta_xi),
                (&registry::AXIOMS_PHI_OF_REEB, r_phi_xi),
                (&registry::AXIOMS_COMPAT_ETA, r_compat_eta),
                (&registry::AXIOMS_COMPAT_METRIC, r_compat_g),
                (&registry::AXIOMS_OMEGA_SKEW, r_omega),
                (&registry::AXIOMS_REEB_ORTHONORMAL, r_reeb),
                (&registry::AXIOMS_QUATERNION_PHI, r_q_phi),
                (&registry::AXIOMS_QUATERNION_REEB, r_q_xi),
                (&registry::AXIOMS_QUATERNION_ETA, r_q_eta),
                (&registry::AXIOMS_SPLITTING, r_split),
            ] {
                out.push(VerificationRecord::check(id, r, tolerance));
            }
        }
        Ok(out)
    }
}
