use alloc::vec::Vec;

use super::{Model, ModelPoint, SpaceForm};
use crate::ambient::{self, AmbientVector, Subspace};
use crate::tol::EPS_GEO;
use crate::{Error, Result};

/// A totally geodesic p-space.
///
/// On the quadrics it is `span ∩ Ω` with `dim span = p + 1`; in Euclidean
/// space it is `base + span` with `dim span = p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PSpace {
    model: Model,
    p: usize,
    span: Subspace,
    base: Option<ModelPoint>,
}

impl PSpace {
    /// p-space of a quadric model from its linear span.
    pub fn from_span(model: Model, span: Subspace) -> Result<PSpace> {
        if model.kind() == SpaceForm::Euclidean {
            return Err(Error::UnsupportedModel);
        }
        if span.form() != model.form() {
            return Err(Error::ModelMismatch);
        }
        let p = span.dim().checked_sub(1).ok_or(Error::BadDimension)?;
        check_p(model, p)?;
        let expected = match model.kind() {
            SpaceForm::Hyperbolic => (1, p),
            _ => (p + 1, 0),
        };
        if span.signature() != expected {
            return Err(Error::NotIntersecting);
        }
        Ok(PSpace {
            model,
            p,
            span,
            base: None,
        })
    }

    /// Euclidean p-space through `base` with direction space `directions`.
    pub fn affine(base: ModelPoint, directions: Subspace) -> Result<PSpace> {
        let model = base.model();
        if model.kind() != SpaceForm::Euclidean {
            return Err(Error::UnsupportedModel);
        }
        if directions.form() != model.form() {
            return Err(Error::ModelMismatch);
        }
        let p = directions.dim();
        check_p(model, p)?;
        Ok(PSpace {
            model,
            p,
            span: directions,
            base: Some(base),
        })
    }

    /// The model.
    pub fn model(&self) -> Model {
        self.model
    }

    /// Intrinsic dimension.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Linear span (quadrics) or direction space (Euclidean).
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Base point of a Euclidean p-space.
    pub fn base(&self) -> Option<&ModelPoint> {
        self.base.as_ref()
    }

    /// Whether `x` lies on the p-space, to within `EPS_GEO`.
    pub fn contains(&self, x: &ModelPoint) -> Result<bool> {
        if x.model() != self.model {
            return Err(Error::ModelMismatch);
        }
        let rel = match &self.base {
            None => x.v().clone(),
            Some(b) => x.v() - b.v(),
        };
        self.span.contains_vector(&rel, EPS_GEO)
    }

    /// A point of the p-space (its base, or the radial image of the
    /// first span vector with positive norm).
    pub fn some_point(&self) -> ModelPoint {
        match &self.base {
            Some(b) => b.clone(),
            None => {
                let (b, _) = self
                    .span
                    .basis()
                    .iter()
                    .zip(self.span.signs())
                    .find(|(_, s)| **s > 0.0)
                    .expect("admissible spans contain a positive direction");
                let b = if b[0] < 0.0 && self.model.kind() == SpaceForm::Hyperbolic {
                    -b
                } else {
                    b.clone()
                };
                ModelPoint::renormalized(self.model, b)
            }
        }
    }

    /// `g`-orthonormal basis of `T_z Φ`. Requires `z` on the p-space.
    pub fn tangent_basis(&self, z: &ModelPoint) -> Result<Vec<AmbientVector>> {
        if !self.contains(z)? {
            return Err(Error::PointNotOnSubspace);
        }
        Ok(self.tangent_basis_unchecked(z))
    }

    pub(crate) fn tangent_basis_unchecked(&self, z: &ModelPoint) -> Vec<AmbientVector> {
        match self.model.kind() {
            SpaceForm::Euclidean => self.span.basis().to_vec(),
            _ => {
                let raw: Vec<AmbientVector> = self
                    .span
                    .basis()
                    .iter()
                    .map(|b| self.model.to_tangent(z, b))
                    .collect();
                ambient::orthonormalize_spanning(self.model.form(), &raw, self.p)
                    .expect("tangent spaces are definite")
                    .basis()
                    .to_vec()
            }
        }
    }

    /// `g`-orthonormal basis of the normal space of `T_z Φ` inside `T_z Ω`,
    /// built inside the tangent space at `z`.
    pub fn normal_basis(&self, z: &ModelPoint) -> Result<Vec<AmbientVector>> {
        let tangent = self.tangent_basis(z)?;
        let model = self.model;
        let dim = model.ambient_dim();
        let raw: Vec<AmbientVector> = (0..dim)
            .map(|i| {
                let mut u = model.to_tangent(z, &AmbientVector::basis(dim, i));
                for _ in 0..2 {
                    for t in &tangent {
                        let c = model.metric(&u, t);
                        u.axpy(-c, t);
                    }
                }
                u
            })
            .collect();
        Ok(
            ambient::orthonormalize_spanning(model.form(), &raw, model.n() - self.p)
                .expect("tangent spaces are definite")
                .basis()
                .to_vec(),
        )
    }

    /// Whether `other` is the same p-space.
    pub fn same_as(&self, other: &PSpace) -> bool {
        if self.model != other.model || self.p != other.p || !self.span.same_span(&other.span) {
            return false;
        }
        match (&self.base, &other.base) {
            (Some(_), Some(b)) => self.contains(b).unwrap_or(false),
            _ => true,
        }
    }
}

fn check_p(model: Model, p: usize) -> Result<()> {
    if p == 0 || p >= model.n() {
        return Err(Error::BadDimension);
    }
    Ok(())
}

/// p-space from generators.
///
/// Quadric models: the generators span `Sp(Φ)` and `p = len - 1`. Euclidean
/// model: the first generator is a point of `Φ` and the rest are directions.
pub fn make_pspace(model: Model, generators: &[AmbientVector]) -> Result<PSpace> {
    let p = generators.len().checked_sub(1).ok_or(Error::BadDimension)?;
    check_p(model, p)?;
    let form = model.form();
    match model.kind() {
        SpaceForm::Euclidean => {
            let base = super::make_point(model, generators[0].clone())?;
            let directions = ambient::orthonormalize(form, &generators[1..])?;
            PSpace::affine(base, directions)
        }
        _ => PSpace::from_span(model, ambient::orthonormalize(form, generators)?),
    }
}

fn check_pair(a: &PSpace, b: &PSpace) -> Result<Model> {
    if a.model != b.model {
        return Err(Error::ModelMismatch);
    }
    if a.model.n() != 3 || a.p != 2 || b.p != 2 {
        return Err(Error::BadDimension);
    }
    Ok(a.model)
}

/// The geodesic `Φ ∩ Δ` of two distinct 2-spaces in a 3-dimensional model.
pub fn intersect_2spaces(phi: &PSpace, delta: &PSpace) -> Result<PSpace> {
    let model = check_pair(phi, delta)?;
    match model.kind() {
        SpaceForm::Spherical | SpaceForm::Hyperbolic => {
            if phi.span.same_span(&delta.span) {
                return Err(Error::IdenticalSubspaces);
            }
            let common = ambient::intersect(&phi.span, &delta.span)?;
            if common.dim() != 2 {
                return Err(Error::DegenerateSubspace);
            }
            PSpace::from_span(model, common).map_err(|e| match e {
                Error::NotIntersecting => Error::DegenerateSubspace,
                other => other,
            })
        }
        SpaceForm::Euclidean => {
            let dirs = ambient::intersect(&phi.span, &delta.span)?;
            let b1 = phi.base.as_ref().expect("affine");
            let b2 = delta.base.as_ref().expect("affine");
            if dirs.dim() == 2 {
                return Err(if phi.contains(b2)? {
                    Error::IdenticalSubspaces
                } else {
                    Error::EmptyIntersection
                });
            }
            // Walk from b1 inside Φ, perpendicular to the common direction,
            // until the hyperplane Δ is reached.
            let line = &dirs.basis()[0];
            let w = phi
                .span
                .basis()
                .iter()
                .map(|b| {
                    let mut r = b.clone();
                    r.axpy(-model.metric(b, line), line);
                    r
                })
                .max_by(|a, b| a.norm2().total_cmp(&b.norm2()))
                .expect("two directions");
            let normal = ambient::complement(&delta.span)?;
            let n2 = &normal.basis()[0];
            let t = model.metric(&(b2.v() - b1.v()), n2) / model.metric(&w, n2);
            let mut point = b1.v().clone();
            point.axpy(t, &w);
            let base = super::make_point(model, point)?;
            PSpace::affine(base, dirs)
        }
    }
}

/// Line angle in `[0, π/2]` between 2-spaces `Φ` and `Δ` at a common point
/// `z`, measured between their normals inside `T_z Ω`.
pub fn dihedral_angle(phi: &PSpace, delta: &PSpace, z: &ModelPoint) -> Result<f64> {
    let model = check_pair(phi, delta)?;
    if z.model() != model {
        return Err(Error::ModelMismatch);
    }
    if !phi.contains(z)? || !delta.contains(z)? {
        return Err(Error::PointNotOnBoth);
    }
    let nf = &phi.normal_basis(z)?[0];
    let nd = &delta.normal_basis(z)?[0];
    let sign = if model.metric(nf, nd) < 0.0 {
        -1.0
    } else {
        1.0
    };
    let mut diff = nf.clone();
    diff.axpy(-sign, nd);
    let mut sum = nf.clone();
    sum.axpy(sign, nd);
    Ok(2.0 * libm::atan2(model.metric_norm(&diff), model.metric_norm(&sum)))
}
