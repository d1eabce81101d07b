//! Numerical tolerances shared across the crate.
//!
//! Construction and evaluation work at double precision. Everything
//! downstream (kneading signs, bones, entropy) tolerates at least 1e-9 of
//! slack, so the looser constants below are the ones that matter for
//! classification decisions.

/// Accuracy of the cubic construction: boundary fixing and critical values.
pub const CONSTRUCT: f64 = 1e-12;

/// Continuity slack between adjacent branches of a piecewise-monotone map.
pub const EVAL: f64 = 1e-12;

/// A point within this distance of a critical point counts as hitting it.
pub const CRIT: f64 = 1e-9;

/// Residual below which a point is considered fixed by an iterate.
pub const FIX: f64 = 1e-9;

/// Residual of the critical periodicity equation on a bone.
pub const BONE: f64 = 1e-9;

/// Residual of the common-orbit equations at a bone center.
pub const CENTER: f64 = 1e-8;

/// Default lap-count depth cap (cubic preimage trees grow like 3^n).
pub const LAP_DEPTH_CAP: usize = 12;

/// Cap on the number of postcritical partition points in the Markov estimator.
pub const MARKOV_POINT_CAP: usize = 400;

/// Largest period handled by the symbolic cycle enumeration.
pub const PERIOD_MAX: usize = 8;
