//! Acceptance thresholds and internal guards, in one place.
//!
//! The run-level tolerances (`FIRST_DERIVATIVE`, `SECOND_DERIVATIVE`) are the
//! defaults for report records. The per-criterion constants are the exit
//! thresholds checked by the acceptance suite.

/// Default tolerance for identities involving at most first derivatives.
pub const FIRST_DERIVATIVE: f64 = 1e-9;
/// Default tolerance for identities involving nested (curvature) derivatives.
pub const SECOND_DERIVATIVE: f64 = 1e-7;

/// Tangency of a vector field value at its base point.
pub const FIELD_TANGENCY: f64 = 1e-10;
/// Tangency of a Lie bracket computed from ambient derivatives.
pub const BRACKET_TANGENCY: f64 = 1e-9;
/// Agreement of the defining and substituted forms of the H-connection.
pub const H_CONNECTION_FORMS: f64 = 1e-9;
/// Minimum Gram determinant of a plane handed to the sectional curvature.
pub const PLANE_GRAM: f64 = 1e-10;
/// Largest residual accepted when fixing the curvature sign. Accuracy is
/// checked separately by the oracle gate.
pub const SIGN_RESOLUTION: f64 = 1e-4;
/// Unit-length and horizontality preconditions on curvature inputs.
pub const UNIT_INPUT: f64 = 1e-10;

// Exit thresholds, one per acceptance criterion.

pub const STRUCTURE_AXIOMS: f64 = 1e-9;
pub const SASAKI_DEFECT: f64 = 1e-7;
pub const NABLA_REEB: f64 = 1e-8;
pub const REEB_BRACKET: f64 = 1e-8;
pub const CONNECTION_IDENTITIES: f64 = 1e-8;
pub const PHI_PARALLEL: f64 = 1e-7;
pub const TORSION: f64 = 1e-7;
pub const CURVATURE_ANNIHILATION: f64 = 1e-6;
pub const TWO_ROUTE: f64 = 1e-6;
pub const SYMMETRIES: f64 = 1e-6;
pub const RICCI: f64 = 1e-5;
pub const HOLOMORPHIC: f64 = 1e-6;
pub const SEC_RELA: f64 = 1e-6;
pub const THEOREM_SEC: f64 = 1e-6;
pub const COR_XXX: f64 = 1e-6;
pub const ORACLE_GATE: f64 = 1e-7;
/// Sample variance bound for the third holomorphic curvature.
pub const CONS2_VARIANCE: f64 = 1e-10;
