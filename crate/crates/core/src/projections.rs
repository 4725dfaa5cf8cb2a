//! Metrical and orthogonal projections of model points onto p-spaces.
//!
//! On the quadrics the metrical projection is the radial image of the linear
//! orthogonal projection onto the span, `φ = s ∘ f`. On the sphere it is
//! undefined for points of `Sp(Φ)^⊥`, where every point of `Φ` is at
//! distance `π/2`; that case is reported as [`Error::NonUniqueProjection`].

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{self, log_direction, ModelPoint, PSpace, SpaceForm};
use crate::tol::{EPS_DOM, LOW_CONFIDENCE};
use crate::{Error, Result};

/// Outcome of a metrical projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// The nearest point of the p-space.
    pub foot: ModelPoint,
    /// Distance from the input to `foot`.
    pub dist: f64,
    /// Largest `|cos|` between the geodesic `foot → x` and a unit tangent of
    /// the p-space at `foot`.
    pub ortho_residual: f64,
    /// Set for spherical inputs close to `Sp(Φ)^⊥`, where the foot is
    /// poorly conditioned.
    pub low_confidence: bool,
}

/// Nearest point of `phi` to `x`.
pub fn metrical_project(phi: &PSpace, x: &ModelPoint) -> Result<ProjectionResult> {
    let model = phi.model();
    if x.model() != model {
        return Err(Error::ModelMismatch);
    }
    if phi.contains(x)? {
        return Ok(ProjectionResult {
            foot: x.clone(),
            dist: 0.0,
            ortho_residual: 0.0,
            low_confidence: false,
        });
    }
    let mut low_confidence = false;
    let foot = match model.kind() {
        SpaceForm::Euclidean => {
            let base = phi.base().expect("affine p-space");
            let rel = x.v() - base.v();
            let mut v = base.v().clone();
            v.axpy(1.0, &phi.span().project_unchecked(&rel));
            geometry::make_point(model, v)?
        }
        SpaceForm::Spherical => {
            let f = phi.span().project_unchecked(x.v());
            let norm = f.norm2();
            if norm <= EPS_DOM {
                return Err(Error::NonUniqueProjection);
            }
            low_confidence = norm < LOW_CONFIDENCE;
            geometry::radial_project(model, &f)?
        }
        SpaceForm::Hyperbolic => {
            // f maps {<v,v> > 0, v_0 > 0} into itself, so s is always defined.
            let f = phi.span().project_unchecked(x.v());
            geometry::radial_project(model, &f)?
        }
    };
    let dist = geometry::distance(x, &foot)?;
    let ortho_residual = residual_unchecked(x, &foot, phi)?;
    Ok(ProjectionResult {
        foot,
        dist,
        ortho_residual,
        low_confidence,
    })
}

/// Every foot `y ∈ Φ` such that the geodesic `y x` meets `Φ` orthogonally.
///
/// On the sphere these are the metrical foot and its antipode; elsewhere the
/// metrical foot alone.
pub fn orthogonal_feet(phi: &PSpace, x: &ModelPoint) -> Result<Vec<ModelPoint>> {
    if x.model() != phi.model() {
        return Err(Error::ModelMismatch);
    }
    if phi.contains(x)? {
        return Err(Error::PointOnSubspace);
    }
    let m = metrical_project(phi, x)?.foot;
    Ok(match phi.model().kind() {
        SpaceForm::Spherical => {
            let anti = m.antipode()?;
            vec![m, anti]
        }
        _ => vec![m],
    })
}

/// Largest `|g(log_z x, t_i)|` over a unit tangent basis `t_i` of `Λ` at `z`.
pub fn orthogonality_residual(x: &ModelPoint, z: &ModelPoint, lambda: &PSpace) -> Result<f64> {
    if x.model() != lambda.model() || z.model() != lambda.model() {
        return Err(Error::ModelMismatch);
    }
    if !lambda.contains(z)? {
        return Err(Error::PointNotOnSubspace);
    }
    residual_unchecked(x, z, lambda)
}

fn residual_unchecked(x: &ModelPoint, z: &ModelPoint, lambda: &PSpace) -> Result<f64> {
    let model = lambda.model();
    let dir = log_direction(z, x)?;
    Ok(lambda
        .tangent_basis_unchecked(z)
        .iter()
        .map(|t| model.metric(dir.dir(), t).abs())
        .fold(0.0, f64::max))
}

/// Whether the geodesic `x z` is orthogonal to `Λ ∋ z`, with the residual.
///
/// Testing a tangent basis is equivalent to requiring every triangle
/// `x z u`, `u ∈ Λ`, to be right at `z`.
pub fn is_orthogonal_to_pspace(
    x: &ModelPoint,
    z: &ModelPoint,
    lambda: &PSpace,
    tol: f64,
) -> Result<(bool, f64)> {
    let r = orthogonality_residual(x, z, lambda)?;
    Ok((r <= tol, r))
}

/// Matrix of the orthogonal projection of `R^{1,2}` onto the plane
/// `x_0 = a x_1`, `a > 1`.
///
/// ```text
///             1     ⎡ a²  -a   0    ⎤
/// f  =  ─────────   ⎢ a   -1   0    ⎥
///        a² - 1     ⎣ 0    0   a²-1 ⎦
/// ```
pub fn lprh2_projection_matrix(a: f64) -> Result<[[f64; 3]; 3]> {
    if !a.is_finite() || a <= 1.0 {
        return Err(Error::BadParameter);
    }
    let d = a * a - 1.0;
    Ok([
        [a * a / d, -a / d, 0.0],
        [a / d, -1.0 / d, 0.0],
        [0.0, 0.0, 1.0],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{AmbientVector, Form};
    use crate::geometry::{make_point, make_pspace, Model};
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn v(c: &[f64]) -> AmbientVector {
        AmbientVector::new(c.to_vec()).unwrap()
    }

    fn model(kind: SpaceForm, n: usize) -> Model {
        Model::new(kind, n).unwrap()
    }

    fn equator() -> PSpace {
        let s2 = model(SpaceForm::Spherical, 2);
        make_pspace(s2, &[v(&[0., 1., 0.]), v(&[0., 0., 1.])]).unwrap()
    }

    #[test]
    fn sphere_projection_onto_equator() {
        let s2 = model(SpaceForm::Spherical, 2);
        let x = make_point(s2, v(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.])).unwrap();
        let r = metrical_project(&equator(), &x).unwrap();
        assert!(r.foot.v().dist_inf(&v(&[0., 1., 0.])) < 1e-15);
        assert_abs_diff_eq!(r.dist, FRAC_PI_4, epsilon = 1e-15);
        assert!(r.ortho_residual < 1e-15);
        assert!(!r.low_confidence);
    }

    #[test]
    fn sphere_pole_is_non_unique() {
        let s2 = model(SpaceForm::Spherical, 2);
        let pole = make_point(s2, v(&[1., 0., 0.])).unwrap();
        assert_eq!(
            metrical_project(&equator(), &pole),
            Err(Error::NonUniqueProjection)
        );
        assert_eq!(
            orthogonal_feet(&equator(), &pole),
            Err(Error::NonUniqueProjection)
        );
    }

    #[test]
    fn sphere_low_confidence_band() {
        let s2 = model(SpaceForm::Spherical, 2);
        let eps: f64 = 1e-7;
        let x = make_point(s2, v(&[libm::sqrt(1.0 - eps * eps), eps, 0.])).unwrap();
        let r = metrical_project(&equator(), &x).unwrap();
        assert!(r.low_confidence);
        assert!(r.foot.v().dist_inf(&v(&[0., 1., 0.])) < 1e-9);
    }

    #[test]
    fn point_on_subspace_is_its_own_foot() {
        let s2 = model(SpaceForm::Spherical, 2);
        let x = make_point(s2, v(&[0., 0.6, 0.8])).unwrap();
        let r = metrical_project(&equator(), &x).unwrap();
        assert_eq!(r.foot, x);
        assert_eq!(r.dist, 0.0);
        assert_eq!(orthogonal_feet(&equator(), &x), Err(Error::PointOnSubspace));
    }

    #[test]
    fn antipodal_feet_on_the_sphere() {
        let s2 = model(SpaceForm::Spherical, 2);
        let x = make_point(s2, v(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.])).unwrap();
        let feet = orthogonal_feet(&equator(), &x).unwrap();
        assert_eq!(feet.len(), 2);
        assert!(feet[0].v().dist_inf(&v(&[0., 1., 0.])) < 1e-15);
        assert!(feet[1].v().dist_inf(&v(&[0., -1., 0.])) < 1e-15);
        for y in &feet {
            let (ok, _) = is_orthogonal_to_pspace(&x, y, &equator(), 1e-12).unwrap();
            assert!(ok);
        }
    }

    #[test]
    fn euclidean_feet() {
        let e3 = model(SpaceForm::Euclidean, 3);
        let plane =
            make_pspace(e3, &[v(&[0., 0., 0.]), v(&[1., 0., 0.]), v(&[0., 1., 0.])]).unwrap();
        let x = make_point(e3, v(&[1., 2., 3.])).unwrap();
        let feet = orthogonal_feet(&plane, &x).unwrap();
        assert_eq!(feet.len(), 1);
        assert!(feet[0].v().dist_inf(&v(&[1., 2., 0.])) < 1e-15);
        let r = metrical_project(&plane, &x).unwrap();
        assert_abs_diff_eq!(r.dist, 3.0, epsilon = 1e-15);
    }

    #[test]
    fn orthogonality_examples() {
        let e3 = model(SpaceForm::Euclidean, 3);
        let axis = make_pspace(e3, &[v(&[0., 0., 0.]), v(&[1., 0., 0.])]).unwrap();
        let o = make_point(e3, v(&[0., 0., 0.])).unwrap();
        let x = make_point(e3, v(&[0., 1., 1.])).unwrap();
        assert_eq!(
            is_orthogonal_to_pspace(&x, &o, &axis, 1e-7).unwrap(),
            (true, 0.0)
        );
        let x = make_point(e3, v(&[1., 1., 0.])).unwrap();
        let (ok, r) = is_orthogonal_to_pspace(&x, &o, &axis, 1e-7).unwrap();
        assert!(!ok);
        assert_abs_diff_eq!(r, FRAC_1_SQRT_2, epsilon = 1e-15);

        let off = make_point(e3, v(&[0., 1., 0.])).unwrap();
        assert_eq!(
            is_orthogonal_to_pspace(&x, &off, &axis, 1e-7),
            Err(Error::PointNotOnSubspace)
        );
    }

    #[test]
    fn hyperbolic_foot_is_orthogonal() {
        let h2 = model(SpaceForm::Hyperbolic, 2);
        let g = make_pspace(h2, &[v(&[1., 0., 0.]), v(&[0., 1., 0.])]).unwrap();
        let x = make_point(
            h2,
            v(&[
                libm::cosh(0.8) * libm::cosh(0.3),
                libm::cosh(0.8) * libm::sinh(0.3),
                libm::sinh(0.8),
            ]),
        )
        .unwrap();
        let r = metrical_project(&g, &x).unwrap();
        let expected = v(&[libm::cosh(0.3), libm::sinh(0.3), 0.]);
        assert!(r.foot.v().dist_inf(&expected) < 1e-14);
        assert_abs_diff_eq!(r.dist, 0.8, epsilon = 1e-14);
        assert!(r.ortho_residual < 1e-14);
        assert_eq!(orthogonal_feet(&g, &x).unwrap().len(), 1);
    }

    #[test]
    fn lorentz_plane_matrix_at_two() {
        let m = lprh2_projection_matrix(2.0).unwrap();
        let expected = [
            [4. / 3., -2. / 3., 0.],
            [2. / 3., -1. / 3., 0.],
            [0., 0., 1.],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(m[i][j], expected[i][j], epsilon = 1e-15);
            }
        }
        assert_eq!(lprh2_projection_matrix(1.0), Err(Error::BadParameter));
        assert_eq!(lprh2_projection_matrix(0.5), Err(Error::BadParameter));
    }

    fn apply(m: &[[f64; 3]; 3], x: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = (0..3).map(|j| m[i][j] * x[j]).sum();
        }
        out
    }

    #[test]
    fn lorentz_plane_fixed_point_and_sample() {
        let m = lprh2_projection_matrix(2.0).unwrap();
        assert_eq!(apply(&m, &[2., 1., 0.]), [2., 1., 0.]);
        let fx = apply(&m, &[1., 1., 0.]);
        assert_abs_diff_eq!(fx[0], 2. / 3., epsilon = 1e-15);
        assert_abs_diff_eq!(fx[1], 1. / 3., epsilon = 1e-15);
        let form = Form::lorentz(3).unwrap();
        let fx = v(&fx);
        let q = form.inner(&fx, &fx).unwrap();
        assert_abs_diff_eq!(q, 1. / 3., epsilon = 1e-15);
        // <x,x> = 0 and (x0 - a x1)^2 / (a^2 - 1) = 1/3: the plus sign holds.
        assert_abs_diff_eq!(q, (1.0f64 - 2.0).powi(2) / 3.0 + 0.0, epsilon = 1e-15);
    }

    #[test]
    fn lorentz_plane_matrix_is_idempotent() {
        for a in [1.5, 2.0, 5.0, 10.0] {
            let m = lprh2_projection_matrix(a).unwrap();
            for i in 0..3 {
                let col = [m[0][i], m[1][i], m[2][i]];
                let twice = apply(&m, &col);
                for r in 0..3 {
                    assert_abs_diff_eq!(twice[r], col[r], epsilon = 1e-12);
                }
            }
        }
    }
}
