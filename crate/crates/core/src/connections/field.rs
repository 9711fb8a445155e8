use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::numlin::jet::{self, Jet};
use crate::numlin::{Alpha, AmbientVector};
use crate::sphere3s::TangentVector;

/// Which connection a covariant derivative uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectionKind {
    LeviCivita,
    HConnection,
}

/// Smooth scalar coefficient for linear combinations of fields.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarField {
    Constant(f64),
    /// `y ↦ <a, y>`
    Linear(AmbientVector),
    Product(Box<ScalarField>, Box<ScalarField>),
    Sum(Vec<ScalarField>),
}

impl ScalarField {
    pub fn eval(&self, y: &[Jet]) -> Jet {
        match self {
            ScalarField::Constant(c) => Jet::constant(*c),
            ScalarField::Linear(a) => jet::vec::dot(&a.to_jets(), y),
            ScalarField::Product(a, b) => a.eval(y) * b.eval(y),
            ScalarField::Sum(terms) => terms.iter().map(|t| t.eval(y)).sum(),
        }
    }

    pub fn product(a: ScalarField, b: ScalarField) -> Self {
        ScalarField::Product(Box::new(a), Box::new(b))
    }
}

/// A smooth tangent vector field on the sphere, given in closed form.
///
/// Fields are cheap to clone (shared tree) and are evaluated by
/// [`Geometry::eval`](super::Geometry::eval) on jet coordinates, so any
/// field, including covariant derivatives of other fields, can be
/// differentiated again.
#[derive(Debug, Clone)]
pub struct VectorField(pub(super) Arc<Node>);

#[derive(Debug)]
pub(super) enum Node {
    /// `y ↦ v - <v, y> y`
    Extension(AmbientVector),
    Reeb(Alpha),
    Phi(Alpha, VectorField),
    ProjectH(VectorField),
    Combination(Vec<(ScalarField, VectorField)>),
    /// `∇_X Y` as a field.
    Covariant {
        kind: ConnectionKind,
        along: VectorField,
        field: VectorField,
    },
    Bracket(VectorField, VectorField),
}

impl VectorField {
    fn node(node: Node) -> Self {
        VectorField(Arc::new(node))
    }

    /// Projection extension of a fixed ambient vector.
    pub fn extension(v: AmbientVector) -> Self {
        VectorField::node(Node::Extension(v))
    }

    /// Canonical extension of a tangent vector; reproduces it at its base point.
    pub fn extend(x: &TangentVector) -> Self {
        VectorField::extension(x.vector().clone())
    }

    pub fn reeb(alpha: Alpha) -> Self {
        VectorField::node(Node::Reeb(alpha))
    }

    pub fn phi(&self, alpha: Alpha) -> Self {
        VectorField::node(Node::Phi(alpha, self.clone()))
    }

    pub fn project_h(&self) -> Self {
        VectorField::node(Node::ProjectH(self.clone()))
    }

    pub fn combination(terms: Vec<(ScalarField, VectorField)>) -> Self {
        VectorField::node(Node::Combination(terms))
    }

    pub fn scaled(&self, c: f64) -> Self {
        VectorField::combination(vec![(ScalarField::Constant(c), self.clone())])
    }

    pub fn plus(&self, other: &VectorField) -> Self {
        VectorField::combination(vec![
            (ScalarField::Constant(1.0), self.clone()),
            (ScalarField::Constant(1.0), other.clone()),
        ])
    }

    pub fn covariant(kind: ConnectionKind, along: &VectorField, field: &VectorField) -> Self {
        VectorField::node(Node::Covariant {
            kind,
            along: along.clone(),
            field: field.clone(),
        })
    }

    pub fn bracket(a: &VectorField, b: &VectorField) -> Self {
        VectorField::node(Node::Bracket(a.clone(), b.clone()))
    }
}
