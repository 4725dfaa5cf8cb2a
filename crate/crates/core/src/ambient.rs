//! Pseudo-Euclidean linear algebra on the ambient space `R^{n+1}` / `R^{1,n}`.
//!
//! A [`Subspace`] always stores a form-orthonormal basis together with the
//! sign `<b,b> = ±1` of each basis vector, so orthogonal projection is a
//! plain sum `f(x) = Σ σ_i <x,b_i> b_i` and every invariant can be asserted
//! directly. Only non-degenerate subspaces can be constructed.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, Mul, Neg, Sub};

use crate::tol::EPS_LIN;
use crate::{Error, Result};

/// Residual Euclidean norm (relative to unit-normalized input) below which a
/// vector is considered to lie in the span of the ones already accepted.
const DEPENDENCE_TOL: f64 = 1e-8;

/// Which bilinear form the ambient space carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `Σ x_i y_i`.
    Euclidean,
    /// `x_0 y_0 - Σ_{i≥1} x_i y_i`.
    Lorentz,
}

/// A form together with the ambient dimension `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Form {
    kind: FormKind,
    dim: usize,
}

impl Form {
    /// Creates a form on `R^dim`; `dim` must be at least 2.
    pub fn new(kind: FormKind, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadDimension);
        }
        Ok(Self { kind, dim })
    }

    /// Euclidean form on `R^dim`.
    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new(FormKind::Euclidean, dim)
    }

    /// Lorentz form on `R^{1,dim-1}`.
    pub fn lorentz(dim: usize) -> Result<Self> {
        Self::new(FormKind::Lorentz, dim)
    }

    /// The form kind.
    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sign of the i-th diagonal entry of the form.
    #[inline]
    pub fn metric_sign(&self, i: usize) -> f64 {
        match self.kind {
            FormKind::Lorentz if i > 0 => -1.0,
            _ => 1.0,
        }
    }

    /// `<x,y>` with a length check.
    pub fn inner(&self, x: &AmbientVector, y: &AmbientVector) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner_unchecked(x, y))
    }

    /// Fails with `DimensionMismatch` unless `x` has length `dim`.
    pub fn check(&self, x: &AmbientVector) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn inner_unchecked(&self, x: &AmbientVector, y: &AmbientVector) -> f64 {
        inner_slices(self.kind, &x.0, &y.0)
    }
}

#[inline]
fn inner_slices(kind: FormKind, x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let rest: f64 = x.iter().zip(y).skip(1).map(|(a, b)| a * b).sum();
    match kind {
        FormKind::Euclidean => x[0] * y[0] + rest,
        FormKind::Lorentz => x[0] * y[0] - rest,
    }
}

/// `<x,y>` under `form`.
pub fn inner(form: Form, x: &AmbientVector, y: &AmbientVector) -> Result<f64> {
    form.inner(x, y)
}

/// Coordinate vector of the ambient space. Index 0 is the Lorentz coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientVector(Vec<f64>);

impl AmbientVector {
    /// Validates length ≥ 2 and finiteness.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 || coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidVector);
        }
        Ok(Self(coords))
    }

    /// Internal constructor for values produced by arithmetic on valid vectors.
    #[inline]
    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 2);
        Self(coords)
    }

    /// The zero vector.
    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    /// The i-th canonical basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self(v)
    }

    /// Coordinates.
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Consumes the vector.
    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false for a valid vector; provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self + a * x`, in place.
    pub fn axpy(&mut self, a: f64, x: &AmbientVector) {
        debug_assert_eq!(self.len(), x.len());
        for (s, xi) in self.0.iter_mut().zip(&x.0) {
            *s += a * xi;
        }
    }

    /// Max-abs norm.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean length of the coordinate vector, regardless of form.
    pub fn norm2(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|c| c * c).sum())
    }

    /// `max_i |self_i - other_i|`.
    pub fn dist_inf(&self, other: &AmbientVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Index<usize> for AmbientVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &AmbientVector {
    type Output = AmbientVector;

    fn add(self, rhs: &AmbientVector) -> AmbientVector {
        debug_assert_eq!(self.len(), rhs.len());
        AmbientVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AmbientVector {
    type Output = AmbientVector;

    fn sub(self, rhs: &AmbientVector) -> AmbientVector {
        debug_assert_eq!(self.len(), rhs.len());
        AmbientVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &AmbientVector {
    type Output = AmbientVector;

    fn mul(self, rhs: f64) -> AmbientVector {
        AmbientVector(self.0.iter().map(|a| a * rhs).collect())
    }
}

impl Neg for &AmbientVector {
    type Output = AmbientVector;

    fn neg(self) -> AmbientVector {
        AmbientVector(self.0.iter().map(|a| -a).collect())
    }
}

/// A non-degenerate linear subspace with a form-orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    form: Form,
    basis: Vec<AmbientVector>,
    signs: Vec<f64>,
}

impl Subspace {
    /// The zero subspace.
    pub fn zero(form: Form) -> Self {
        Self {
            form,
            basis: Vec::new(),
            signs: Vec::new(),
        }
    }

    /// The whole ambient space with its canonical basis.
    pub fn full(form: Form) -> Self {
        let dim = form.dim();
        Self {
            form,
            basis: (0..dim).map(|i| AmbientVector::basis(dim, i)).collect(),
            signs: (0..dim).map(|i| form.metric_sign(i)).collect(),
        }
    }

    /// The ambient form.
    pub fn form(&self) -> Form {
        self.form
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Form-orthonormal basis.
    pub fn basis(&self) -> &[AmbientVector] {
        &self.basis
    }

    /// `<b_i,b_i>` for each basis vector, each `+1.0` or `-1.0`.
    pub fn signs(&self) -> &[f64] {
        &self.signs
    }

    /// `(n_plus, n_minus)`.
    pub fn signature(&self) -> (usize, usize) {
        let plus = self.signs.iter().filter(|s| **s > 0.0).count();
        (plus, self.signs.len() - plus)
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &AmbientVector) -> Result<AmbientVector> {
        self.form.check(x)?;
        Ok(self.project_unchecked(x))
    }

    pub(crate) fn project_unchecked(&self, x: &AmbientVector) -> AmbientVector {
        let mut out = AmbientVector::zeros(x.len());
        for (b, s) in self.basis.iter().zip(&self.signs) {
            out.axpy(s * self.form.inner_unchecked(x, b), b);
        }
        out
    }

    /// Whether `x` lies in the subspace, by `|f(x) - x|_∞ ≤ tol·max(1, |x|_∞)`.
    pub fn contains_vector(&self, x: &AmbientVector, tol: f64) -> Result<bool> {
        let fx = self.project(x)?;
        Ok(fx.dist_inf(x) <= tol * x.norm_inf().max(1.0))
    }

    /// Subspace equality as mutual containment of the bases.
    pub fn same_span(&self, other: &Subspace) -> bool {
        if self.form != other.form || self.dim() != other.dim() {
            return false;
        }
        let tol = 10.0 * EPS_LIN;
        let inside = |a: &Subspace, b: &Subspace| {
            a.basis
                .iter()
                .all(|v| b.contains_vector(v, tol).unwrap_or(false))
        };
        inside(self, other) && inside(other, self)
    }

    /// Largest `|<b_i,b_j> - σ_i δ_ij|`; zero for an exact orthonormal basis.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, bi) in self.basis.iter().enumerate() {
            for (j, bj) in self.basis.iter().enumerate() {
                let target = if i == j { self.signs[i] } else { 0.0 };
                worst = worst.max((self.form.inner_unchecked(bi, bj) - target).abs());
            }
        }
        worst
    }
}

/// Orthogonal projection of `x` onto `f`.
pub fn orthogonal_project(f: &Subspace, x: &AmbientVector) -> Result<AmbientVector> {
    f.project(x)
}

/// Pivoted Gram–Schmidt for an indefinite form.
///
/// The input must be linearly independent.
pub fn orthonormalize(form: Form, vectors: &[AmbientVector]) -> Result<Subspace> {
    gram_schmidt(form, vectors, Mode::Independent)
}

/// Orthonormal basis of the span of possibly dependent `vectors`, keeping at
/// most `max_dim` directions (largest residuals first).
pub(crate) fn orthonormalize_spanning(
    form: Form,
    vectors: &[AmbientVector],
    max_dim: usize,
) -> Result<Subspace> {
    gram_schmidt(form, vectors, Mode::Spanning { max_dim })
}

/// Basis of the form-orthogonal complement of `f` in the ambient space.
pub fn complement(f: &Subspace) -> Result<Subspace> {
    let form = f.form();
    let rows: Vec<Vec<f64>> = f.basis().iter().map(|b| lowered(form, b)).collect();
    let null = nullspace(form.dim(), &rows);
    let c = gram_schmidt(form, &null, Mode::Independent)?;
    debug_assert_eq!(c.dim() + f.dim(), form.dim());
    Ok(c)
}

/// `F ∩ G`, possibly zero-dimensional.
///
/// Solves the stacked constraints `<x,c> = 0` for every `c` in a basis of
/// `F^⊥` and of `G^⊥`.
pub fn intersect(f: &Subspace, g: &Subspace) -> Result<Subspace> {
    if f.form().kind() != g.form().kind() {
        return Err(Error::ModelMismatch);
    }
    if f.form().dim() != g.form().dim() {
        return Err(Error::DimensionMismatch {
            expected: f.form().dim(),
            found: g.form().dim(),
        });
    }
    let form = f.form();
    let fc = complement(f)?;
    let gc = complement(g)?;
    let rows: Vec<Vec<f64>> = fc
        .basis()
        .iter()
        .chain(gc.basis())
        .map(|c| lowered(form, c))
        .collect();
    let null = nullspace(form.dim(), &rows);
    gram_schmidt(form, &null, Mode::Independent)
}

/// Coefficients of the linear functional `x ↦ <x,c>` in the canonical basis.
fn lowered(form: Form, c: &AmbientVector) -> Vec<f64> {
    c.coords()
        .iter()
        .enumerate()
        .map(|(i, ci)| form.metric_sign(i) * ci)
        .collect()
}

/// Euclidean-orthonormal basis of `{x : r·x = 0 for every row r}`.
fn nullspace(dim: usize, rows: &[Vec<f64>]) -> Vec<AmbientVector> {
    let euclid = Form {
        kind: FormKind::Euclidean,
        dim,
    };
    let rows: Vec<AmbientVector> = rows.iter().cloned().map(AmbientVector).collect();
    let row_space = gram_schmidt(euclid, &rows, Mode::Spanning { max_dim: dim })
        .expect("the Euclidean form is never degenerate");
    let target = dim - row_space.dim();
    let residuals: Vec<AmbientVector> = (0..dim)
        .map(|i| {
            let e = AmbientVector::basis(dim, i);
            &e - &row_space.project_unchecked(&e)
        })
        .collect();
    gram_schmidt(euclid, &residuals, Mode::Spanning { max_dim: target })
        .expect("the Euclidean form is never degenerate")
        .basis
}

#[derive(Clone, Copy)]
enum Mode {
    /// Every input must contribute a basis vector.
    Independent,
    /// Inputs may be dependent; stop once `max_dim` vectors are accepted.
    Spanning { max_dim: usize },
}

fn gram_schmidt(form: Form, vectors: &[AmbientVector], mode: Mode) -> Result<Subspace> {
    let kind = form.kind();
    let mut out = Subspace::zero(form);
    let mut cands: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        form.check(v)?;
        let n = v.norm2();
        if n <= DEPENDENCE_TOL {
            match mode {
                Mode::Independent => return Err(Error::LinearDependence),
                Mode::Spanning { .. } => continue,
            }
        }
        cands.push(v.coords().iter().map(|c| c / n).collect());
    }
    let max_dim = match mode {
        Mode::Independent => cands.len(),
        Mode::Spanning { max_dim } => max_dim.min(form.dim()),
    };

    while out.dim() < max_dim {
        let mut dependent = false;
        cands.retain(|c| {
            let small = norm2(c) <= DEPENDENCE_TOL;
            dependent |= small;
            !small
        });
        if dependent && matches!(mode, Mode::Independent) {
            return Err(Error::LinearDependence);
        }
        if cands.is_empty() {
            break;
        }

        let (pivot, q) = cands
            .iter()
            .enumerate()
            .map(|(i, c)| (i, inner_slices(kind, c, c)))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("non-empty");
        let scale = norm2(&cands[pivot]);
        if q.abs() <= EPS_LIN * scale * scale {
            // Every remaining residual is (nearly) null. A nonzero cross term
            // still yields a non-null combination; otherwise the remainder is
            // totally isotropic and the restriction is degenerate.
            let mut best = (0, 0, 0.0_f64);
            for i in 0..cands.len() {
                for j in (i + 1)..cands.len() {
                    let g = inner_slices(kind, &cands[i], &cands[j]);
                    let rel = g.abs() / (norm2(&cands[i]) * norm2(&cands[j]));
                    if rel > best.2.abs() {
                        best = (i, j, rel.copysign(g));
                    }
                }
            }
            let (i, j, rel) = best;
            if rel.abs() <= EPS_LIN {
                return Err(Error::DegenerateSubspace);
            }
            let s = rel.signum();
            let cj = cands[j].clone();
            for (a, b) in cands[i].iter_mut().zip(&cj) {
                *a += s * b;
            }
            continue;
        }

        let c = cands.swap_remove(pivot);
        let norm = libm::sqrt(q.abs());
        let sign = q.signum();
        let b: Vec<f64> = c.iter().map(|x| x / norm).collect();
        // Two sweeps against the whole accepted basis keep the residuals
        // orthogonal to working precision.
        for cand in cands.iter_mut() {
            for _ in 0..2 {
                for (bb, s) in out
                    .basis
                    .iter()
                    .map(|v| &v.0)
                    .chain([&b])
                    .zip(out.signs.iter().copied().chain([sign]))
                {
                    let coef = s * inner_slices(kind, cand, bb);
                    for (a, x) in cand.iter_mut().zip(bb) {
                        *a -= coef * x;
                    }
                }
            }
        }
        out.basis.push(AmbientVector(b));
        out.signs.push(sign);
    }

    if matches!(mode, Mode::Independent) && out.dim() < vectors.len() {
        return Err(Error::LinearDependence);
    }
    Ok(out)
}

fn norm2(c: &[f64]) -> f64 {
    libm::sqrt(c.iter().map(|x| x * x).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> AmbientVector {
        AmbientVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn inner_examples() {
        let l3 = Form::lorentz(3).unwrap();
        let e2 = Form::euclidean(2).unwrap();
        assert_eq!(
            inner(l3, &v(&[1., 0., 0.]), &v(&[1., 0., 0.])).unwrap(),
            1.0
        );
        assert_eq!(
            inner(l3, &v(&[2., 1., 1.]), &v(&[2., 1., 1.])).unwrap(),
            2.0
        );
        assert_eq!(inner(e2, &v(&[1., 0.]), &v(&[0., 1.])).unwrap(), 0.0);
    }

    #[test]
    fn inner_dimension_mismatch() {
        let l3 = Form::lorentz(3).unwrap();
        let err = inner(l3, &v(&[1., 0.]), &v(&[1., 0., 0.])).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn vector_validation() {
        assert_eq!(AmbientVector::new(vec![1.0]), Err(Error::InvalidVector));
        assert_eq!(
            AmbientVector::new(vec![1.0, f64::NAN]),
            Err(Error::InvalidVector)
        );
        assert!(Form::lorentz(1).is_err());
    }

    #[test]
    fn orthonormalize_axis_aligned() {
        let e3 = Form::euclidean(3).unwrap();
        let s = orthonormalize(e3, &[v(&[3., 0., 0.]), v(&[1., 1., 0.])]).unwrap();
        assert_eq!(s.signature(), (2, 0));
        let mut basis: Vec<_> = s.basis().iter().map(|b| b.coords().to_vec()).collect();
        basis.sort_by(|a, b| b[0].abs().total_cmp(&a[0].abs()));
        assert_abs_diff_eq!(basis[0][0].abs(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(basis[1][1].abs(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(basis[1][0], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn orthonormalize_lorentz_mixed_signature() {
        let l3 = Form::lorentz(3).unwrap();
        let s = orthonormalize(l3, &[v(&[2., 1., 0.]), v(&[1., 2., 0.])]).unwrap();
        assert_eq!(s.signature(), (1, 1));
        assert!(s.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn orthonormalize_null_vector_is_degenerate() {
        let l3 = Form::lorentz(3).unwrap();
        assert_eq!(
            orthonormalize(l3, &[v(&[1., 1., 0.])]),
            Err(Error::DegenerateSubspace)
        );
        // Tangent to the cone: span{(1,1,0),(0,0,1)} has a radical.
        assert_eq!(
            orthonormalize(l3, &[v(&[1., 1., 0.]), v(&[0., 0., 1.])]),
            Err(Error::DegenerateSubspace)
        );
    }

    #[test]
    fn orthonormalize_two_null_vectors_spanning_a_lorentz_plane() {
        let l3 = Form::lorentz(3).unwrap();
        let s = orthonormalize(l3, &[v(&[1., 1., 0.]), v(&[1., -1., 0.])]).unwrap();
        assert_eq!(s.signature(), (1, 1));
        assert!(s.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn orthonormalize_dependent() {
        let e3 = Form::euclidean(3).unwrap();
        assert_eq!(
            orthonormalize(e3, &[v(&[1., 2., 0.]), v(&[2., 4., 0.])]),
            Err(Error::LinearDependence)
        );
    }

    #[test]
    fn project_examples() {
        let e3 = Form::euclidean(3).unwrap();
        let f = orthonormalize(e3, &[v(&[0., 1., 0.]), v(&[0., 0., 1.])]).unwrap();
        let p = orthogonal_project(&f, &v(&[5., 1., 2.])).unwrap();
        assert!(p.dist_inf(&v(&[0., 1., 2.])) < 1e-15);

        // Plane x0 = 2 x1 in R^{1,2}.
        let l3 = Form::lorentz(3).unwrap();
        let f = orthonormalize(l3, &[v(&[2., 1., 0.]), v(&[0., 0., 1.])]).unwrap();
        let p = orthogonal_project(&f, &v(&[1., 1., 0.])).unwrap();
        assert!(p.dist_inf(&v(&[2. / 3., 1. / 3., 0.])) < 1e-15);

        let x = v(&[2., 1., 7.]);
        assert!(orthogonal_project(&f, &x).unwrap().dist_inf(&x) < 1e-14);
    }

    #[test]
    fn complement_examples() {
        let e3 = Form::euclidean(3).unwrap();
        let f = orthonormalize(e3, &[v(&[1., 0., 0.])]).unwrap();
        let c = complement(&f).unwrap();
        let expected = orthonormalize(e3, &[v(&[0., 1., 0.]), v(&[0., 0., 1.])]).unwrap();
        assert!(c.same_span(&expected));

        let l3 = Form::lorentz(3).unwrap();
        let f = orthonormalize(l3, &[v(&[1., 0., 0.])]).unwrap();
        assert_eq!(complement(&f).unwrap().signature(), (0, 2));

        // x0 = 2 x1: <w,(2,1,0)> = 0 and <w,(0,0,1)> = 0 solve to w ∝ (1,2,0).
        let f = orthonormalize(l3, &[v(&[2., 1., 0.]), v(&[0., 0., 1.])]).unwrap();
        let c = complement(&f).unwrap();
        assert_eq!(c.dim(), 1);
        let w = &c.basis()[0];
        for b in f.basis() {
            assert!(l3.inner(w, b).unwrap().abs() < 1e-14);
        }
        assert_abs_diff_eq!(w[1] / w[0], 2.0, epsilon = 1e-14);
        assert_eq!(c.signature(), (0, 1));
    }

    #[test]
    fn intersect_examples() {
        let e4 = Form::euclidean(4).unwrap();
        let e = |i| AmbientVector::basis(4, i);
        let f = orthonormalize(e4, &[e(0), e(1), e(2)]).unwrap();
        let g = orthonormalize(e4, &[e(0), e(1), e(3)]).unwrap();
        let h = intersect(&f, &g).unwrap();
        assert!(h.same_span(&orthonormalize(e4, &[e(0), e(1)]).unwrap()));
        assert!(intersect(&f, &f).unwrap().same_span(&f));

        let a = orthonormalize(e4, &[e(0)]).unwrap();
        let b = orthonormalize(e4, &[e(1)]).unwrap();
        assert_eq!(intersect(&a, &b).unwrap().dim(), 0);
    }

    #[test]
    fn full_and_zero() {
        let l4 = Form::lorentz(4).unwrap();
        assert_eq!(Subspace::full(l4).signature(), (1, 3));
        assert_eq!(complement(&Subspace::full(l4)).unwrap().dim(), 0);
        assert!(complement(&Subspace::zero(l4))
            .unwrap()
            .same_span(&Subspace::full(l4)));
    }
}
