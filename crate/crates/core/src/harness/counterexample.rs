use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use super::{ReportDetail, Stream, TrialReport, TrialRng, MAX_ATTEMPTS};
use crate::ambient::{self, AmbientVector};
use crate::geometry::{angle_at, distance, radial_project, Model, ModelPoint, PSpace, SpaceForm};
use crate::tol::EPS_GEO;
use crate::{Error, Result};

/// A vertex angle of `yzu` within this many radians of `π/2` counts as right.
pub const NON_RIGHT_GUARD: f64 = 0.01;

/// Minimum separation (and distance from antipodal) of `y`, `z`, `u`.
const SEPARATION: f64 = 0.05;

/// On `S^3`, `x ∈ Sp(Φ)^⊥` is at distance `π/2` from every point of the great
/// 2-sphere `Φ`, so `xyz`, `xzu`, `xyu` are right at `y`, `z`, `y` for any
/// `y, z, u ∈ Φ`, while `yzu` is almost never right.
///
/// Each report passes when the three hypothesis angles are right to within
/// `EPS_GEO`; its detail records the angles of `yzu`.
pub fn r1_counterexample(n_trials: usize, seed: u64) -> Vec<TrialReport> {
    (0..n_trials as u64)
        .map(|i| r1_trial(seed, i).expect("S^3 sampling cannot exhaust"))
        .collect()
}

/// One trial of [`r1_counterexample`], keyed by `(seed, index)`.
pub fn r1_trial(seed: u64, index: u64) -> Result<TrialReport> {
    let s3 = Model::new(SpaceForm::Spherical, 3)?;
    let mut rng = TrialRng::new(seed, index, Stream::Counterexample);
    for _ in 0..MAX_ATTEMPTS {
        let gens: Vec<AmbientVector> = (0..3).map(|_| rng.gaussian(4)).collect();
        let Ok(span) = ambient::orthonormalize(s3.form(), &gens) else {
            continue;
        };
        let phi = PSpace::from_span(s3, span)?;
        let normal = ambient::complement(phi.span())?;
        let x = radial_project(s3, &normal.basis()[0])?;

        let mut draw = || -> Result<ModelPoint> {
            let mut v = AmbientVector::zeros(4);
            for b in phi.span().basis() {
                v.axpy(rng.normal(), b);
            }
            radial_project(s3, &v)
        };
        let (Ok(y), Ok(z), Ok(u)) = (draw(), draw(), draw()) else {
            continue;
        };
        if !well_separated(&[&y, &z, &u])? {
            continue;
        }
        return report(seed, index, s3, &x, &y, &z, &u);
    }
    Err(Error::SamplingExhausted)
}

fn well_separated(pts: &[&ModelPoint]) -> Result<bool> {
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = distance(pts[i], pts[j])?;
            if !(SEPARATION..=PI - SEPARATION).contains(&d) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn report(
    seed: u64,
    index: u64,
    model: Model,
    x: &ModelPoint,
    y: &ModelPoint,
    z: &ModelPoint,
    u: &ModelPoint,
) -> Result<TrialReport> {
    let hypothesis = [angle_at(y, x, z)?, angle_at(z, x, u)?, angle_at(y, x, u)?];
    let yzu_angles = [angle_at(y, z, u)?, angle_at(z, y, u)?, angle_at(u, y, z)?];
    let residual = hypothesis
        .iter()
        .map(|a| (a - FRAC_PI_2).abs())
        .fold(0.0, f64::max);
    let non_right = yzu_angles
        .iter()
        .all(|a| (a - FRAC_PI_2).abs() > NON_RIGHT_GUARD);
    Ok(TrialReport {
        trial: index,
        seed,
        model,
        residual,
        tol: EPS_GEO,
        n_probe: 0,
        pass: residual <= EPS_GEO,
        wall_time: 0.0,
        detail: ReportDetail::Counterexample {
            hypothesis,
            yzu_angles,
            non_right,
        },
    })
}

/// Fraction of counterexample reports whose triangle `yzu` has no right angle.
pub fn non_right_fraction(reports: &[TrialReport]) -> f64 {
    if reports.is_empty() {
        return 0.0;
    }
    let hits = reports
        .iter()
        .filter(|r| {
            matches!(
                r.detail,
                ReportDetail::Counterexample {
                    non_right: true,
                    ..
                }
            )
        })
        .count();
    hits as f64 / reports.len() as f64
}
