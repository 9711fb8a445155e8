//! Numeric substrate: ambient vectors, exact forward-mode directional
//! derivatives, orthonormalization and the quaternionic structure matrices.

pub mod diff;
pub mod jet;
pub mod linalg;
pub mod quaternion;

pub use diff::{directional_derivative, directional_derivative_f64, DiffScheme};
pub use jet::Jet;
pub use linalg::{dot, gram_schmidt, AmbientVector, IntMatrix, PIVOT_TOLERANCE};
pub use quaternion::{quaternion_structures, Alpha, ComplexStructureTriple};
