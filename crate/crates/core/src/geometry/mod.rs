//! Model manifolds, points, geodesics and angles.
//!
//! Tangent spaces carry the induced metric `g`: the ambient form on the
//! sphere and in Euclidean space, and its negative on the hyperboloid (the
//! Lorentz form is negative definite on `T_z H^n = z^⊥`). All angles are
//! measured in `g`.

mod pspace;

pub use pspace::{dihedral_angle, intersect_2spaces, make_pspace, PSpace};

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::ambient::{AmbientVector, Form};
use crate::tol::{EPS_GEO, EPS_LIN, EPS_MODEL, EPS_SNAP};
use crate::{Error, Result};

/// Separation below which two points are treated as the same point.
const COINCIDENT: f64 = 1e-12;

/// The three simply connected space forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceForm {
    /// Unit sphere `S^n ⊂ R^{n+1}`.
    Spherical,
    /// `E^n` in affine coordinates.
    Euclidean,
    /// Hyperboloid `H^n ⊂ R^{1,n}`.
    Hyperbolic,
}

impl SpaceForm {
    /// One-letter tag used by the wire formats.
    pub fn tag(self) -> char {
        match self {
            SpaceForm::Spherical => 'S',
            SpaceForm::Euclidean => 'E',
            SpaceForm::Hyperbolic => 'H',
        }
    }

    /// Inverse of [`SpaceForm::tag`].
    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "S" => Some(SpaceForm::Spherical),
            "E" => Some(SpaceForm::Euclidean),
            "H" => Some(SpaceForm::Hyperbolic),
            _ => None,
        }
    }

    /// All three, in tag order `S`, `E`, `H`.
    pub const ALL: [SpaceForm; 3] = [
        SpaceForm::Spherical,
        SpaceForm::Euclidean,
        SpaceForm::Hyperbolic,
    ];
}

/// A space form together with its intrinsic dimension `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Model {
    kind: SpaceForm,
    n: usize,
}

impl Model {
    /// Fails with `BadDimension` for `n < 2`.
    pub fn new(kind: SpaceForm, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadDimension);
        }
        Ok(Self { kind, n })
    }

    /// Which space form.
    pub fn kind(&self) -> SpaceForm {
        self.kind
    }

    /// Intrinsic dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `n + 1` for the quadric models, `n` for the affine Euclidean model.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceForm::Euclidean => self.n,
            _ => self.n + 1,
        }
    }

    /// The ambient form.
    pub fn form(&self) -> Form {
        let dim = self.ambient_dim();
        let form = match self.kind {
            SpaceForm::Hyperbolic => Form::lorentz(dim),
            _ => Form::euclidean(dim),
        };
        form.expect("ambient dimension is at least 2")
    }

    /// A fixed base point: `e_0` on the quadrics, the origin in `E^n`.
    pub fn origin(&self) -> ModelPoint {
        let dim = self.ambient_dim();
        let v = match self.kind {
            SpaceForm::Euclidean => AmbientVector::zeros(dim),
            _ => AmbientVector::basis(dim, 0),
        };
        ModelPoint { model: *self, v }
    }

    /// Induced metric on tangent vectors.
    #[inline]
    pub fn metric(&self, u: &AmbientVector, w: &AmbientVector) -> f64 {
        let ip = self.form().inner_unchecked(u, w);
        match self.kind {
            SpaceForm::Hyperbolic => -ip,
            _ => ip,
        }
    }

    /// `sqrt(g(u,u))`, clamped at zero.
    pub fn metric_norm(&self, u: &AmbientVector) -> f64 {
        libm::sqrt(self.metric(u, u).max(0.0))
    }

    /// Orthogonal projection of an ambient vector onto `T_z`.
    pub(crate) fn to_tangent(self, z: &ModelPoint, u: &AmbientVector) -> AmbientVector {
        match self.kind {
            SpaceForm::Euclidean => u.clone(),
            _ => {
                let form = self.form();
                let mut t = u.clone();
                // <z,z> = 1 on both quadrics; the second pass cleans rounding.
                for _ in 0..2 {
                    let c = form.inner_unchecked(&t, &z.v);
                    t.axpy(-c, &z.v);
                }
                t
            }
        }
    }
}

/// A validated point of a model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPoint {
    model: Model,
    v: AmbientVector,
}

impl ModelPoint {
    /// The model the point lives in.
    pub fn model(&self) -> Model {
        self.model
    }

    /// Ambient coordinates.
    pub fn v(&self) -> &AmbientVector {
        &self.v
    }

    /// Antipode on the sphere; `UnsupportedModel` elsewhere.
    pub fn antipode(&self) -> Result<ModelPoint> {
        match self.model.kind {
            SpaceForm::Spherical => Ok(ModelPoint {
                model: self.model,
                v: -&self.v,
            }),
            _ => Err(Error::UnsupportedModel),
        }
    }

    /// Wraps an ambient vector already known to be on the model, rescaling
    /// away accumulated rounding.
    pub(crate) fn renormalized(model: Model, v: AmbientVector) -> ModelPoint {
        match model.kind {
            SpaceForm::Euclidean => ModelPoint { model, v },
            _ => {
                let q = model.form().inner_unchecked(&v, &v);
                debug_assert!(q > 0.0);
                let v = &v * (1.0 / libm::sqrt(q));
                ModelPoint { model, v }
            }
        }
    }
}

/// Validates `v` as a point of `model`.
///
/// Quadric inputs whose norm is within `EPS_SNAP` of 1 are rescaled onto the
/// model first.
pub fn make_point(model: Model, v: AmbientVector) -> Result<ModelPoint> {
    let form = model.form();
    form.check(&v)?;
    match model.kind {
        SpaceForm::Euclidean => Ok(ModelPoint { model, v }),
        SpaceForm::Spherical | SpaceForm::Hyperbolic => {
            let q = form.inner_unchecked(&v, &v);
            if q <= 0.0 {
                return Err(Error::OffManifold);
            }
            if model.kind == SpaceForm::Hyperbolic && v[0] <= 0.0 {
                return Err(Error::OffManifold);
            }
            let norm = libm::sqrt(q);
            if (norm - 1.0).abs() > EPS_SNAP {
                return Err(Error::OffManifold);
            }
            let p = ModelPoint::renormalized(model, v);
            let q = form.inner_unchecked(&p.v, &p.v);
            if (q - 1.0).abs() > EPS_MODEL {
                return Err(Error::OffManifold);
            }
            Ok(p)
        }
    }
}

/// `v / sqrt(<v,v>)` onto the sphere or the upper hyperboloid sheet.
pub fn radial_project(model: Model, v: &AmbientVector) -> Result<ModelPoint> {
    let form = model.form();
    form.check(v)?;
    match model.kind {
        SpaceForm::Euclidean => Err(Error::UnsupportedModel),
        SpaceForm::Spherical | SpaceForm::Hyperbolic => {
            let q = form.inner_unchecked(v, v);
            if q <= EPS_LIN * EPS_LIN {
                return Err(Error::OutsideDomain);
            }
            if model.kind == SpaceForm::Hyperbolic && v[0] <= 0.0 {
                return Err(Error::OutsideDomain);
            }
            Ok(ModelPoint::renormalized(model, v.clone()))
        }
    }
}

fn same_model(a: &ModelPoint, b: &ModelPoint) -> Result<Model> {
    if a.model != b.model {
        return Err(Error::ModelMismatch);
    }
    Ok(a.model)
}

/// Geodesic distance.
///
/// Evaluated in half-chord form: `2 atan2(|x-y|, |x+y|)` on the sphere and
/// `2 asinh(sqrt(-<x-y,x-y>)/2)` on the hyperboloid. These equal `arccos<x,y>`
/// and `arcosh<x,y>` but stay accurate at small and (on the sphere) large
/// separations.
pub fn distance(x: &ModelPoint, y: &ModelPoint) -> Result<f64> {
    let model = same_model(x, y)?;
    let diff = &x.v - &y.v;
    Ok(match model.kind {
        SpaceForm::Euclidean => diff.norm2(),
        SpaceForm::Spherical => {
            let sum = &x.v + &y.v;
            2.0 * libm::atan2(diff.norm2(), sum.norm2())
        }
        SpaceForm::Hyperbolic => {
            let chord2 = -model.form().inner_unchecked(&diff, &diff);
            2.0 * libm::asinh(libm::sqrt(chord2.max(0.0)) / 2.0)
        }
    })
}

/// A unit tangent vector (in the induced metric) at a model point.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    at: ModelPoint,
    dir: AmbientVector,
}

impl TangentVector {
    /// Projects `dir` onto `T_at` and normalizes it in the induced metric.
    pub fn unit(at: &ModelPoint, dir: &AmbientVector) -> Result<TangentVector> {
        let model = at.model;
        model.form().check(dir)?;
        let t = model.to_tangent(at, dir);
        let norm = model.metric_norm(&t);
        if norm <= EPS_LIN * dir.norm2().max(1.0) {
            return Err(Error::BadParameter);
        }
        Ok(TangentVector {
            at: at.clone(),
            dir: &t * (1.0 / norm),
        })
    }

    /// Base point.
    pub fn at(&self) -> &ModelPoint {
        &self.at
    }

    /// Ambient direction vector.
    pub fn dir(&self) -> &AmbientVector {
        &self.dir
    }
}

/// Unit tangent at `y` along the minimizing geodesic towards `x`.
pub fn log_direction(y: &ModelPoint, x: &ModelPoint) -> Result<TangentVector> {
    let model = same_model(x, y)?;
    if x.v.dist_inf(&y.v) <= COINCIDENT {
        return Err(Error::CoincidentPoints);
    }
    if model.kind == SpaceForm::Spherical {
        let c = model.form().inner_unchecked(&x.v, &y.v);
        if (c + 1.0).abs() <= EPS_GEO {
            return Err(Error::AntipodalPoints);
        }
    }
    let raw = match model.kind {
        SpaceForm::Euclidean => &x.v - &y.v,
        _ => model.to_tangent(y, &x.v),
    };
    let norm = model.metric_norm(&raw);
    if norm == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(TangentVector {
        at: y.clone(),
        dir: &raw * (1.0 / norm),
    })
}

/// Point at arc length `s` along the geodesic with initial velocity `t`.
pub fn exp_point(t: &TangentVector, s: f64) -> ModelPoint {
    let y = &t.at;
    let model = y.model;
    let v = match model.kind {
        SpaceForm::Euclidean => {
            let mut v = y.v.clone();
            v.axpy(s, &t.dir);
            return ModelPoint { model, v };
        }
        SpaceForm::Spherical => {
            let mut v = &y.v * libm::cos(s);
            v.axpy(libm::sin(s), &t.dir);
            v
        }
        SpaceForm::Hyperbolic => {
            let mut v = &y.v * libm::cosh(s);
            v.axpy(libm::sinh(s), &t.dir);
            v
        }
    };
    ModelPoint::renormalized(model, v)
}

/// Angle in `[0, π]` between two tangent vectors at the same point.
pub fn tangent_angle(a: &TangentVector, b: &TangentVector) -> Result<f64> {
    if a.at.model != b.at.model {
        return Err(Error::ModelMismatch);
    }
    let model = a.at.model;
    let diff = &a.dir - &b.dir;
    let sum = &a.dir + &b.dir;
    Ok(2.0 * libm::atan2(model.metric_norm(&diff), model.metric_norm(&sum)))
}

/// Angle at `y` of the geodesic triangle `x y z`.
pub fn angle_at(y: &ModelPoint, x: &ModelPoint, z: &ModelPoint) -> Result<f64> {
    let u = log_direction(y, x)?;
    let w = log_direction(y, z)?;
    tangent_angle(&u, &w)
}

/// Geodesic symmetry of `u` about `z`.
pub fn point_reflection(z: &ModelPoint, u: &ModelPoint) -> Result<ModelPoint> {
    let model = same_model(z, u)?;
    match model.kind {
        SpaceForm::Euclidean => {
            let mut v = &z.v * 2.0;
            v.axpy(-1.0, &u.v);
            Ok(ModelPoint { model, v })
        }
        SpaceForm::Spherical | SpaceForm::Hyperbolic => {
            let c = model.form().inner_unchecked(&u.v, &z.v);
            if model.kind == SpaceForm::Spherical && (c + 1.0).abs() <= EPS_GEO {
                return Err(Error::AntipodalPoints);
            }
            let mut v = &z.v * (2.0 * c);
            v.axpy(-1.0, &u.v);
            Ok(ModelPoint::renormalized(model, v))
        }
    }
}

/// The upper bound of the injectivity range for unit-speed geodesics.
pub fn injectivity_radius(model: Model) -> f64 {
    match model.kind {
        SpaceForm::Spherical => PI,
        _ => f64::INFINITY,
    }
}

/// `g`-orthonormal basis of the tangent space `T_z Ω`.
pub fn tangent_space_basis(z: &ModelPoint) -> Vec<AmbientVector> {
    let model = z.model;
    let dim = model.ambient_dim();
    let raw: Vec<AmbientVector> = (0..dim)
        .map(|i| model.to_tangent(z, &AmbientVector::basis(dim, i)))
        .collect();
    crate::ambient::orthonormalize_spanning(model.form(), &raw, model.n())
        .expect("tangent spaces are definite")
        .basis()
        .to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::FRAC_PI_2;

    fn v(c: &[f64]) -> AmbientVector {
        AmbientVector::new(c.to_vec()).unwrap()
    }

    fn s2() -> Model {
        Model::new(SpaceForm::Spherical, 2).unwrap()
    }

    fn h2() -> Model {
        Model::new(SpaceForm::Hyperbolic, 2).unwrap()
    }

    fn e3() -> Model {
        Model::new(SpaceForm::Euclidean, 3).unwrap()
    }

    fn pt(m: Model, c: &[f64]) -> ModelPoint {
        make_point(m, v(c)).unwrap()
    }

    #[test]
    fn make_point_examples() {
        assert!(make_point(s2(), v(&[0., 0., 1.])).is_ok());
        let c = libm::cosh(1.0);
        let s = libm::sinh(1.0);
        assert!(make_point(h2(), v(&[c, s, 0.])).is_ok());
        assert_eq!(make_point(h2(), v(&[-1., 0., 0.])), Err(Error::OffManifold));
        assert_eq!(make_point(s2(), v(&[0., 0., 2.])), Err(Error::OffManifold));
        assert_eq!(make_point(h2(), v(&[0., 1., 0.])), Err(Error::OffManifold));
        assert!(matches!(
            make_point(s2(), v(&[0., 1.])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn make_point_snaps_near_unit_inputs() {
        let p = make_point(s2(), v(&[0., 0., 1.0 + 5e-7])).unwrap();
        assert_eq!(p.v()[2], 1.0);
    }

    #[test]
    fn distance_examples() {
        let x = pt(s2(), &[1., 0., 0.]);
        let y = pt(s2(), &[0., 1., 0.]);
        assert_abs_diff_eq!(distance(&x, &y).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(distance(&x, &x).unwrap(), 0.0);

        let o = pt(h2(), &[1., 0., 0.]);
        let p = pt(h2(), &[libm::cosh(1.0), libm::sinh(1.0), 0.]);
        assert_abs_diff_eq!(distance(&o, &p).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(distance(&o, &x), Err(Error::ModelMismatch));
    }

    #[test]
    fn distance_matches_clamped_inverse_cosine() {
        // arccos / arcosh of the clamped inner product, away from branch points.
        let a = pt(s2(), &[0.6, 0.8, 0.]);
        let b = pt(s2(), &[0., 0.6, 0.8]);
        let ip: f64 = 0.48;
        assert_abs_diff_eq!(distance(&a, &b).unwrap(), libm::acos(ip), epsilon = 1e-14);

        let a = pt(h2(), &[libm::cosh(0.7), libm::sinh(0.7), 0.]);
        let b = pt(h2(), &[libm::cosh(1.3), 0., libm::sinh(1.3)]);
        let ip = libm::cosh(0.7) * libm::cosh(1.3);
        assert_abs_diff_eq!(distance(&a, &b).unwrap(), libm::acosh(ip), epsilon = 1e-13);
    }

    #[test]
    fn radial_project_examples() {
        let p = radial_project(s2(), &v(&[0., 2., 0.])).unwrap();
        assert_eq!(p.v(), &v(&[0., 1., 0.]));
        let p = radial_project(h2(), &v(&[2., 1., 0.])).unwrap();
        let r3 = libm::sqrt(3.0);
        assert!(p.v().dist_inf(&v(&[2. / r3, 1. / r3, 0.])) < 1e-15);
        assert_eq!(
            radial_project(h2(), &v(&[1., 2., 0.])),
            Err(Error::OutsideDomain)
        );
        assert_eq!(
            radial_project(h2(), &v(&[-2., 1., 0.])),
            Err(Error::OutsideDomain)
        );
        assert_eq!(
            radial_project(s2(), &v(&[0., 0., 0.])),
            Err(Error::OutsideDomain)
        );
        assert_eq!(
            radial_project(e3(), &v(&[1., 0., 0.])),
            Err(Error::UnsupportedModel)
        );
    }

    #[test]
    fn log_direction_examples() {
        let t = log_direction(&pt(s2(), &[1., 0., 0.]), &pt(s2(), &[0., 1., 0.])).unwrap();
        assert!(t.dir().dist_inf(&v(&[0., 1., 0.])) < 1e-15);

        let t = log_direction(&pt(e3(), &[0., 0., 0.]), &pt(e3(), &[0., 0., 2.])).unwrap();
        assert_eq!(t.dir(), &v(&[0., 0., 1.]));

        // d/dt (cosh t, sinh t, 0) at t = 0.
        let p = pt(h2(), &[libm::cosh(1.0), libm::sinh(1.0), 0.]);
        let t = log_direction(&pt(h2(), &[1., 0., 0.]), &p).unwrap();
        assert!(t.dir().dist_inf(&v(&[0., 1., 0.])) < 1e-15);
    }

    #[test]
    fn log_direction_errors() {
        let x = pt(s2(), &[1., 0., 0.]);
        assert_eq!(log_direction(&x, &x), Err(Error::CoincidentPoints));
        let y = pt(s2(), &[-1., 0., 0.]);
        assert_eq!(log_direction(&x, &y), Err(Error::AntipodalPoints));
    }

    #[test]
    fn exp_point_examples() {
        let y = pt(s2(), &[1., 0., 0.]);
        let t = TangentVector::unit(&y, &v(&[0., 1., 0.])).unwrap();
        assert!(exp_point(&t, FRAC_PI_2).v().dist_inf(&v(&[0., 1., 0.])) < 1e-15);
        assert!(exp_point(&t, 0.0).v().dist_inf(y.v()) < 1e-15);

        let o = pt(h2(), &[1., 0., 0.]);
        let t = TangentVector::unit(&o, &v(&[0., 1., 0.])).unwrap();
        let p = exp_point(&t, 1.0);
        assert!(p.v().dist_inf(&v(&[libm::cosh(1.0), libm::sinh(1.0), 0.])) < 1e-15);
    }

    #[test]
    fn angle_examples() {
        let o = pt(e3(), &[0., 0., 0.]);
        let x = pt(e3(), &[1., 0., 0.]);
        let z = pt(e3(), &[0., 1., 0.]);
        assert_abs_diff_eq!(angle_at(&o, &x, &z).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(angle_at(&o, &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn spherical_pythagoras_at_pi_over_three() {
        let s3 = Model::new(SpaceForm::Spherical, 3).unwrap();
        let y = s3.origin();
        let a = PI / 3.0;
        let t1 = TangentVector::unit(&y, &AmbientVector::basis(4, 1)).unwrap();
        let t2 = TangentVector::unit(&y, &AmbientVector::basis(4, 2)).unwrap();
        let x = exp_point(&t1, a);
        let z = exp_point(&t2, a);
        assert_abs_diff_eq!(angle_at(&y, &x, &z).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        let b = distance(&x, &z).unwrap();
        assert_abs_diff_eq!(libm::cos(b), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn point_reflection_examples() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let z = pt(s2(), &[h, h, 0.]);
        let u = pt(s2(), &[0., 1., 0.]);
        let r = point_reflection(&z, &u).unwrap();
        assert!(r.v().dist_inf(&v(&[1., 0., 0.])) < 1e-15);
        let back = point_reflection(&z, &r).unwrap();
        assert!(back.v().dist_inf(u.v()) < 1e-15);
        assert_eq!(
            point_reflection(&z, &z.antipode().unwrap()),
            Err(Error::AntipodalPoints)
        );

        let z = pt(e3(), &[1., 1., 0.]);
        let u = pt(e3(), &[0., 0., 0.]);
        assert_eq!(point_reflection(&z, &u).unwrap().v(), &v(&[2., 2., 0.]));
    }

    #[test]
    fn reflection_preserves_sheet() {
        let z = pt(h2(), &[libm::cosh(0.5), libm::sinh(0.5), 0.]);
        let u = pt(h2(), &[libm::cosh(2.0), 0., libm::sinh(2.0)]);
        let r = point_reflection(&z, &u).unwrap();
        assert!(r.v()[0] > 0.0);
        assert_abs_diff_eq!(
            distance(&z, &r).unwrap(),
            distance(&z, &u).unwrap(),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(angle_at(&z, &u, &r).unwrap(), PI, epsilon = 1e-7);
    }

    #[test]
    fn tangent_space_basis_is_orthonormal() {
        let h3 = Model::new(SpaceForm::Hyperbolic, 3).unwrap();
        let z = pt(h3, &[libm::cosh(1.0), 0., libm::sinh(1.0), 0.]);
        let b = tangent_space_basis(&z);
        assert_eq!(b.len(), 3);
        for (i, bi) in b.iter().enumerate() {
            assert!(h3.form().inner(bi, z.v()).unwrap().abs() < 1e-14);
            for (j, bj) in b.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(h3.metric(bi, bj), target, epsilon = 1e-14);
            }
        }
    }
}
