//! Numerical verification engine for the canonical 3-Sasakian structure on
//! `S^{4n+3}`, its H-connection on the contact distribution `H`, and the
//! curvature identities of that connection.

// Negated comparisons are how NaN residuals are made to fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod connections;
pub mod curvature;
pub mod error;
pub mod harness;
pub mod numlin;
pub mod record;
pub mod registry;
pub mod sampling;
pub mod sphere3s;
pub mod tolerances;

pub use error::{GeometryError, Result};
