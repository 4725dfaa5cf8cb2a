//! Seeded verification harness for the three-perpendiculars theorem.
//!
//! - [`sample_config`] draws a configuration `(x, Π, Λ, y, z)` satisfying the
//!   hypotheses: `xy ⟂ Π` at `y ∈ Π ∖ Λ` and `yz ⟂ Λ` at `z ∈ Λ`.
//! - [`verify_vn`] measures how far `xz` is from being orthogonal to `Λ`.
//! - [`verify_vg`] checks the four-point form: if `xyz`, `xyu` are right at
//!   `y` and `yzu` is right at `z`, then `xzu` is right at `z`.
//! - [`r1_counterexample`] shows that on the sphere the roles of the four
//!   triangles cannot be exchanged.
//! - [`oracle_project`] is a brute-force minimizer used to cross-check
//!   metrical projections.
//!
//! Every random draw goes through [`TrialRng`], keyed by seed, trial index
//! and stream.

mod counterexample;
mod oracle;
mod rng;
mod sample;
mod verify;

pub use counterexample::{non_right_fraction, r1_counterexample, r1_trial, NON_RIGHT_GUARD};
pub use oracle::oracle_project;
pub use rng::{trial_seed, Stream, TrialRng};
pub use sample::{
    perturb_foot, random_nested_pair, random_nested_subspaces, sample_config, sample_four_points,
    Dims, TrialConfig,
};
pub use verify::{verify_vg, verify_vn, ReportDetail, TrialReport, DEFAULT_N_PROBE};

use alloc::vec::Vec;

use crate::ambient::AmbientVector;
use crate::geometry::{exp_point, Model, ModelPoint, PSpace, SpaceForm, TangentVector};

/// Rejection attempts before [`crate::Error::SamplingExhausted`].
pub const MAX_ATTEMPTS: usize = 100;

/// Random point: uniform on the sphere, within hyperbolic distance 1.5 of the
/// origin, standard normal coordinates in Euclidean space.
pub fn random_point(model: Model, rng: &mut TrialRng) -> ModelPoint {
    let dim = model.ambient_dim();
    match model.kind() {
        SpaceForm::Euclidean => ModelPoint::renormalized(model, rng.gaussian(dim)),
        SpaceForm::Spherical => loop {
            let g = rng.gaussian(dim);
            if g.norm2() > 1e-3 {
                break ModelPoint::renormalized(model, g);
            }
        },
        SpaceForm::Hyperbolic => {
            let o = model.origin();
            let t = random_unit_tangent(&o, rng);
            exp_point(&t, rng.uniform(0.0, 1.5))
        }
    }
}

/// Uniformly distributed unit tangent at `z`.
pub fn random_unit_tangent(z: &ModelPoint, rng: &mut TrialRng) -> TangentVector {
    let dim = z.model().ambient_dim();
    loop {
        if let Ok(t) = TangentVector::unit(z, &rng.gaussian(dim)) {
            break t;
        }
    }
}

/// Unit tangent at `z ∈ phi` lying in `T_z phi` and `g`-orthogonal to
/// `avoid` (a list of `g`-orthonormal tangent vectors). `None` if that space
/// is trivial or the draw degenerates.
pub(crate) fn random_tangent_within(
    z: &ModelPoint,
    phi_tangent: &[AmbientVector],
    avoid: &[AmbientVector],
    rng: &mut TrialRng,
) -> Option<TangentVector> {
    let model = z.model();
    let dim = model.ambient_dim();
    let mut u = AmbientVector::zeros(dim);
    for t in phi_tangent {
        u.axpy(rng.normal(), t);
    }
    remove_components(model, &mut u, avoid);
    TangentVector::unit(z, &u).ok()
}

/// Unit tangent at `z` normal to `T_z phi`.
pub(crate) fn random_normal_tangent(
    z: &ModelPoint,
    phi: &PSpace,
    rng: &mut TrialRng,
) -> Option<TangentVector> {
    let model = z.model();
    let tangent = phi.tangent_basis(z).ok()?;
    let mut u = model.to_tangent(z, &rng.gaussian(model.ambient_dim()));
    remove_components(model, &mut u, &tangent);
    TangentVector::unit(z, &u).ok()
}

fn remove_components(model: Model, u: &mut AmbientVector, basis: &[AmbientVector]) {
    for _ in 0..2 {
        for t in basis {
            let c = model.metric(u, t);
            u.axpy(-c, t);
        }
    }
}

/// `g`-orthonormalized copies of `vs` (tangent vectors at a common point).
pub(crate) fn orthonormal_tangents(model: Model, vs: &[AmbientVector]) -> Vec<AmbientVector> {
    let mut out: Vec<AmbientVector> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut u = v.clone();
        remove_components(model, &mut u, &out);
        let n = model.metric_norm(&u);
        if n > 1e-8 {
            out.push(&u * (1.0 / n));
        }
    }
    out
}
