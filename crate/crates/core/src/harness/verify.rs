use core::f64::consts::FRAC_PI_2;

use super::{random_tangent_within, Stream, TrialConfig, TrialRng};
use crate::geometry::{angle_at, distance, exp_point, Model, ModelPoint};
use crate::projections::orthogonality_residual;
use crate::{Error, Result};

/// Probe points drawn on `Λ` per configuration unless overridden.
pub const DEFAULT_N_PROBE: usize = 32;

/// Measurements for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    /// Position of the trial in its run.
    pub trial: u64,
    /// Seed the trial was drawn from.
    pub seed: u64,
    /// The model.
    pub model: Model,
    /// Headline defect compared against `tol`.
    pub residual: f64,
    /// Tolerance used.
    pub tol: f64,
    /// Number of probe points sampled.
    pub n_probe: usize,
    /// Verdict.
    pub pass: bool,
    /// Seconds spent, when the caller measured it; zero otherwise.
    pub wall_time: f64,
    /// Check-specific measurements.
    pub detail: ReportDetail,
}

/// What a [`TrialReport`] measured.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportDetail {
    /// Three perpendiculars on a sampled configuration.
    ThreePerpendiculars {
        /// Dimension of `Π`.
        p: usize,
        /// Dimension of `Λ`.
        q: usize,
        /// Tangent-basis residual of `xz` against `Λ` at `z`.
        basis_residual: f64,
        /// Largest `|∠xzu - π/2|` over the probe points `u`.
        probe_residual: f64,
        /// Whether the probes agree with the basis residual.
        probes_consistent: bool,
    },
    /// Four-point form.
    FourPoint {
        /// Hypothesis angles `∠xyz`, `∠xyu`, `∠yzu`.
        hypothesis: [f64; 3],
        /// Conclusion angle `∠xzu`.
        conclusion: f64,
    },
    /// One spherical counterexample trial.
    Counterexample {
        /// Hypothesis angles `∠xyz`, `∠xzu`, `∠xyu`.
        hypothesis: [f64; 3],
        /// Angles of `yzu` at `y`, `z` and `u`.
        yzu_angles: [f64; 3],
        /// No vertex angle of `yzu` is within the guard band of `π/2`.
        non_right: bool,
    },
}

/// Checks that `xz` is orthogonal to `Λ` at `z`.
///
/// The residual is the larger of the tangent-basis defect and the probe
/// defect `max |∠xzu - π/2|` over `n_probe` random `u ∈ Λ`. By linearity the
/// probe defect cannot exceed `asin(√q · basis)`; a violation of that bound
/// marks the probes inconsistent and fails the trial.
pub fn verify_vn(cfg: &TrialConfig, tol: f64, n_probe: usize) -> TrialReport {
    let TrialConfig { x, z, lambda, .. } = cfg;
    let q = lambda.p();
    let basis_residual = orthogonality_residual(x, z, lambda).unwrap_or(f64::INFINITY);

    let mut rng = TrialRng::new(cfg.seed, 0, Stream::Probe);
    let tangent = lambda.tangent_basis(z).unwrap_or_default();
    let mut probe_residual: f64 = 0.0;
    let mut drawn = 0;
    while drawn < n_probe {
        let Some(t) = random_tangent_within(z, &tangent, &[], &mut rng) else {
            if tangent.is_empty() {
                probe_residual = f64::INFINITY;
                break;
            }
            continue;
        };
        let u = exp_point(&t, rng.uniform(0.1, 1.0));
        let defect = angle_at(z, x, &u).map_or(f64::INFINITY, |a| (a - FRAC_PI_2).abs());
        probe_residual = probe_residual.max(defect);
        drawn += 1;
    }
    let bound = libm::asin((libm::sqrt(q as f64) * basis_residual).min(1.0));
    let probes_consistent = probe_residual <= bound + 1e-9;
    let residual = basis_residual.max(probe_residual);
    TrialReport {
        trial: 0,
        seed: cfg.seed,
        model: cfg.model,
        residual,
        tol,
        n_probe,
        pass: residual <= tol && probes_consistent,
        wall_time: 0.0,
        detail: ReportDetail::ThreePerpendiculars {
            p: cfg.pi.p(),
            q,
            basis_residual,
            probe_residual,
            probes_consistent,
        },
    }
}

/// Four-point form: with `xyz`, `xyu` right at `y` and `yzu` right at `z`,
/// reports how far `xzu` is from right at `z`.
pub fn verify_vg(
    model: Model,
    x: &ModelPoint,
    y: &ModelPoint,
    z: &ModelPoint,
    u: &ModelPoint,
    tol: f64,
) -> Result<TrialReport> {
    let pts = [x, y, z, u];
    if pts.iter().any(|p| p.model() != model) {
        return Err(Error::ModelMismatch);
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if distance(pts[i], pts[j])? <= 1e-12 {
                return Err(Error::CoincidentPoints);
            }
        }
    }
    let hypothesis = [angle_at(y, x, z)?, angle_at(y, x, u)?, angle_at(z, y, u)?];
    for (angle, triangle) in hypothesis.iter().zip(["xyz@y", "xyu@y", "yzu@z"]) {
        if (angle - FRAC_PI_2).abs() > tol {
            return Err(Error::HypothesisNotMet {
                triangle,
                angle: *angle,
            });
        }
    }
    let conclusion = angle_at(z, x, u)?;
    let residual = (conclusion - FRAC_PI_2).abs();
    Ok(TrialReport {
        trial: 0,
        seed: 0,
        model,
        residual,
        tol,
        n_probe: 0,
        pass: residual <= tol,
        wall_time: 0.0,
        detail: ReportDetail::FourPoint {
            hypothesis,
            conclusion,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::AmbientVector;
    use crate::geometry::{make_point, make_pspace, SpaceForm};
    use crate::harness::{sample_config, sample_four_points};

    fn e3() -> Model {
        Model::new(SpaceForm::Euclidean, 3).unwrap()
    }

    fn ep(c: [f64; 3]) -> ModelPoint {
        make_point(e3(), AmbientVector::new(c.to_vec()).unwrap()).unwrap()
    }

    fn hand_config() -> TrialConfig {
        let o = AmbientVector::zeros(3);
        let e = |i| AmbientVector::basis(3, i);
        TrialConfig {
            model: e3(),
            pi: make_pspace(e3(), &[o.clone(), e(0), e(1)]).unwrap(),
            lambda: make_pspace(e3(), &[o, e(0)]).unwrap(),
            x: ep([0., 1., 1.]),
            y: ep([0., 1., 0.]),
            z: ep([0., 0., 0.]),
            seed: 1,
        }
    }

    #[test]
    fn hand_config_passes_with_zero_residual() {
        let r = verify_vn(&hand_config(), 1e-7, 8);
        assert!(r.pass);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn sampled_configs_pass() {
        for kind in SpaceForm::ALL {
            for seed in 0..50 {
                let cfg = sample_config(kind, 4, 2, 1, seed).unwrap();
                let r = verify_vn(&cfg, 1e-7, DEFAULT_N_PROBE);
                assert!(r.pass, "{kind:?} seed {seed}: {r:?}");
            }
        }
    }

    #[test]
    fn perturbed_foot_fails() {
        let mut cfg = hand_config();
        cfg.z = ep([0.05, 0., 0.]);
        let r = verify_vn(&cfg, 1e-7, 8);
        assert!(!r.pass);
        assert!(r.residual > 0.01);
    }

    #[test]
    fn perturbed_samples_fail() {
        let mut failed = 0;
        for seed in 0..100 {
            let cfg = sample_config(SpaceForm::ALL[seed as usize % 3], 4, 3, 1, seed).unwrap();
            let bad = crate::harness::perturb_foot(&cfg, 0.05).unwrap();
            failed += usize::from(!verify_vn(&bad, 1e-7, DEFAULT_N_PROBE).pass);
        }
        assert!(failed >= 99, "{failed}");
    }

    #[test]
    fn four_point_hand_example() {
        let r = verify_vg(
            e3(),
            &ep([0., 1., 1.]),
            &ep([0., 1., 0.]),
            &ep([0., 0., 0.]),
            &ep([1., 0., 0.]),
            1e-7,
        )
        .unwrap();
        assert!(r.pass);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn four_point_constructed_on_s3() {
        let s3 = Model::new(SpaceForm::Spherical, 3).unwrap();
        for seed in 0..50 {
            let [x, y, z, u] = sample_four_points(s3, seed).unwrap();
            let r = verify_vg(s3, &x, &y, &z, &u, 1e-7).unwrap();
            assert!(r.pass, "seed {seed}: {r:?}");
        }
    }

    #[test]
    fn four_point_errors() {
        let y = ep([0., 1., 0.]);
        assert_eq!(
            verify_vg(e3(), &ep([0., 1., 1.]), &y, &y, &ep([1., 0., 0.]), 1e-7),
            Err(Error::CoincidentPoints)
        );
        let err = verify_vg(
            e3(),
            &ep([0., 2., 1.]),
            &y,
            &ep([0., 0., 0.]),
            &ep([1., 0., 0.]),
            1e-7,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::HypothesisNotMet {
                triangle: "xyz@y",
                ..
            }
        ));
    }
}
