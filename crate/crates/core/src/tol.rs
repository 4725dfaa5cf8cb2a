//! Numerical tolerances shared by every module.
//!
//! Linear constructions are checked at [`EPS_LIN`]; anything that went
//! through a transcendental function is checked at [`EPS_GEO`].

/// Orthonormality, degeneracy and containment checks in the ambient space.
pub const EPS_LIN: f64 = 1e-9;

/// Model membership (`<v,v> = 1`).
pub const EPS_MODEL: f64 = 1e-9;

/// Inputs this close to the model are renormalized before validation.
pub const EPS_SNAP: f64 = 1e-6;

/// Geometric assertions after `acos`/`acosh` and friends.
pub const EPS_GEO: f64 = 1e-7;

/// Below this `|f(x)|` the spherical radial projection is meaningless.
pub const EPS_DOM: f64 = 1e-9;

/// Spherical projections with `|f(x)|` under this are flagged low confidence.
pub const LOW_CONFIDENCE: f64 = 1e-6;

/// Default verification tolerance for the harness and the CLI.
pub const DEFAULT_TOL: f64 = 1e-7;
