use thiserror::Error;

/// Errors raised by the geometry engine.
///
/// Identity failures are never errors: they are reported as data in
/// [`VerificationRecord`](crate::record::VerificationRecord)s. Errors are
/// reserved for malformed inputs and numerical breakdowns.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("vectors are attached to different base points (distance {distance:e})")]
    BaseMismatch { distance: f64 },

    #[error("point is not on the unit sphere: |<x,x> - 1| = {deviation:e}")]
    NotOnSphere { deviation: f64 },

    #[error("vector is not tangent at its base point: |<v,x>| = {deviation:e}")]
    NotTangent { deviation: f64 },

    #[error("structure index {0} out of range 1..=3")]
    AlphaOutOfRange(u8),

    /// `index` is 1-based, matching the position in the caller's list.
    #[error("degenerate input at index {index}: pivot norm {pivot:e} below {threshold:e}")]
    Degenerate {
        index: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("degenerate plane: Gram determinant {gram:e}")]
    DegeneratePlane { gram: f64 },

    #[error("non-finite value in {context}")]
    NonFinite { context: String },

    #[error("differentiation nested deeper than {max} levels")]
    NestingTooDeep { max: usize },

    #[error("internal consistency check `{check}` failed: residual {residual:e} > {tolerance:e}")]
    InternalConsistency {
        check: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
