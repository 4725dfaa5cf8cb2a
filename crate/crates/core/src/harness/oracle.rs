use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::ambient::AmbientVector;
use crate::geometry::{distance, exp_point, ModelPoint, PSpace, SpaceForm, TangentVector};
use crate::{Error, Result};

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const LINE_ITERS: usize = 80;
const MIN_STEP: f64 = 1e-10;

/// Brute-force nearest point of a 1- or 2-space to `x`.
///
/// The p-space is parametrized by the exponential map at a base point and
/// scanned on a `resolution` (per axis) grid. The best grid point is then
/// polished by golden-section searches along geodesics through the current
/// iterate, re-centring the tangent frame after every sweep and halving the
/// search radius. Nothing here touches the linear projection formulas.
pub fn oracle_project(phi: &PSpace, x: &ModelPoint, resolution: usize) -> Result<ModelPoint> {
    if x.model() != phi.model() {
        return Err(Error::ModelMismatch);
    }
    let q = phi.p();
    if q > 2 {
        return Err(Error::UnsupportedDimension);
    }
    if resolution < 100 {
        return Err(Error::BadParameter);
    }
    let model = phi.model();
    let base = phi.some_point();
    let frame = phi.tangent_basis(&base)?;

    // Monotone in d(x, ·): -cos d, cosh d and d² respectively.
    let cost = |p: &ModelPoint| -> f64 {
        let ip = model.form().inner_unchecked(x.v(), p.v());
        match model.kind() {
            SpaceForm::Spherical => -ip,
            SpaceForm::Hyperbolic => ip,
            SpaceForm::Euclidean => {
                let d = x.v() - p.v();
                d.norm2() * d.norm2()
            }
        }
    };
    let range = match model.kind() {
        SpaceForm::Spherical => PI,
        _ => 2.0 * distance(x, &base)? + 1.0,
    };

    let step = 2.0 * range / (resolution - 1) as f64;
    let coord = |i: usize| -range + step * i as f64;
    let mut best = (f64::INFINITY, base.clone());
    let grid_axes: Vec<usize> = (0..resolution).collect();
    let mut consider = |coeffs: &[f64]| {
        let p = exp_coords(&base, &frame, coeffs);
        let c = cost(&p);
        if c < best.0 {
            best = (c, p);
        }
    };
    if q == 1 {
        for &i in &grid_axes {
            consider(&[coord(i)]);
        }
    } else {
        for &i in &grid_axes {
            for &j in &grid_axes {
                consider(&[coord(i), coord(j)]);
            }
        }
    }

    let (mut best_cost, mut current) = best;
    let mut radius = step;
    while radius > MIN_STEP {
        let local = phi.tangent_basis(&current)?;
        for t in &local {
            let dir = TangentVector::unit(&current, t)?;
            let s = golden_section(|s| cost(&exp_point(&dir, s)), -radius, radius);
            let cand = exp_point(&dir, s);
            let c = cost(&cand);
            if c <= best_cost {
                best_cost = c;
                current = cand;
            }
        }
        radius *= 0.5;
    }
    Ok(current)
}

fn exp_coords(base: &ModelPoint, frame: &[AmbientVector], coeffs: &[f64]) -> ModelPoint {
    let mut v = AmbientVector::zeros(base.model().ambient_dim());
    for (t, c) in frame.iter().zip(coeffs) {
        v.axpy(*c, t);
    }
    let len = libm::sqrt(coeffs.iter().map(|c| c * c).sum());
    match TangentVector::unit(base, &v) {
        Ok(dir) if len > 0.0 => exp_point(&dir, len),
        _ => base.clone(),
    }
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut a = hi - GOLDEN * (hi - lo);
    let mut b = lo + GOLDEN * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..LINE_ITERS {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - GOLDEN * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + GOLDEN * (hi - lo);
            fb = f(b);
        }
    }
    // Never move away from the centre unless it helps.
    let mid = 0.5 * (lo + hi);
    if f(mid) <= f(0.0) {
        mid
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_point, make_pspace, Model};
    use crate::projections::metrical_project;

    fn v(c: &[f64]) -> AmbientVector {
        AmbientVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn euclidean_plane_closed_form() {
        let e3 = Model::new(SpaceForm::Euclidean, 3).unwrap();
        let plane =
            make_pspace(e3, &[v(&[0., 0., 0.]), v(&[1., 0., 0.]), v(&[0., 1., 0.])]).unwrap();
        let x = make_point(e3, v(&[1., 2., 3.])).unwrap();
        let o = oracle_project(&plane, &x, 100).unwrap();
        assert!(o.v().dist_inf(&v(&[1., 2., 0.])) < 1e-6);
    }

    #[test]
    fn sphere_near_pole_matches_metrical() {
        let s2 = Model::new(SpaceForm::Spherical, 2).unwrap();
        let eq = make_pspace(s2, &[v(&[0., 1., 0.]), v(&[0., 0., 1.])]).unwrap();
        let e = 1e-3;
        let x = make_point(s2, v(&[libm::sqrt(1.0 - 2.0 * e * e), e, e])).unwrap();
        let m = metrical_project(&eq, &x).unwrap().foot;
        let o = oracle_project(&eq, &x, 200).unwrap();
        assert!(o.v().dist_inf(m.v()) < 1e-6, "{o:?} vs {m:?}");
    }

    #[test]
    fn hyperbolic_geodesic_matches_metrical() {
        let h2 = Model::new(SpaceForm::Hyperbolic, 2).unwrap();
        let g = make_pspace(h2, &[v(&[1., 0., 0.]), v(&[0., 1., 0.])]).unwrap();
        let x = make_point(
            h2,
            v(&[
                libm::cosh(0.9) * libm::cosh(-0.4),
                libm::cosh(0.9) * libm::sinh(-0.4),
                libm::sinh(0.9),
            ]),
        )
        .unwrap();
        let m = metrical_project(&g, &x).unwrap().foot;
        let o = oracle_project(&g, &x, 100).unwrap();
        assert!(o.v().dist_inf(m.v()) < 1e-6);
    }

    #[test]
    fn rejects_high_dimensions_and_coarse_grids() {
        let s4 = Model::new(SpaceForm::Spherical, 4).unwrap();
        let e = |i| AmbientVector::basis(5, i);
        let phi = make_pspace(s4, &[e(0), e(1), e(2), e(3)]).unwrap();
        let x = make_point(s4, e(4)).unwrap();
        assert_eq!(
            oracle_project(&phi, &x, 100),
            Err(Error::UnsupportedDimension)
        );
        let g = make_pspace(s4, &[e(0), e(1)]).unwrap();
        assert_eq!(oracle_project(&g, &x, 10), Err(Error::BadParameter));
    }
}
