use alloc::vec::Vec;

use super::{
    orthonormal_tangents, random_normal_tangent, random_point, random_tangent_within, Stream,
    TrialRng, MAX_ATTEMPTS,
};
use crate::ambient::{self, AmbientVector, Form, Subspace};
use crate::geometry::{exp_point, Model, ModelPoint, PSpace, SpaceForm, TangentVector};
use crate::projections::{metrical_project, orthogonality_residual};
use crate::tol::EPS_GEO;
use crate::{Error, Result};

/// `(n, p, q)` with `0 < q < p < n` and `n ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    n: usize,
    p: usize,
    q: usize,
}

impl Dims {
    /// Validates the dimension triple.
    pub fn new(n: usize, p: usize, q: usize) -> Result<Self> {
        if n < 3 || q == 0 || q >= p || p >= n {
            return Err(Error::BadDimension);
        }
        Ok(Self { n, p, q })
    }

    /// Model dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of `Π`.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Dimension of `Λ`.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Every admissible `(p, q)` for a given `n`.
    pub fn all_for(n: usize) -> Vec<Dims> {
        let mut out = Vec::new();
        for p in 2..n {
            for q in 1..p {
                out.push(Dims { n, p, q });
            }
        }
        out
    }
}

/// One instance of the three-perpendiculars configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    /// The model.
    pub model: Model,
    /// The p-space `Π`.
    pub pi: PSpace,
    /// The q-space `Λ ⊂ Π`.
    pub lambda: PSpace,
    /// Point off `Π`.
    pub x: ModelPoint,
    /// Foot of `x` on `Π`, not on `Λ`.
    pub y: ModelPoint,
    /// Foot of `y` on `Λ`.
    pub z: ModelPoint,
    /// Seed the configuration was drawn from.
    pub seed: u64,
}

impl TrialConfig {
    /// `p` and `q`.
    pub fn dims(&self) -> Dims {
        Dims {
            n: self.model.n(),
            p: self.pi.p(),
            q: self.lambda.p(),
        }
    }
}

/// Draws a configuration deterministically from `seed`.
///
/// `Λ` and `Π ⊃ Λ` share a random centre; `y` is reached from a random
/// point of `Λ` along a direction of `Π` normal to `Λ`; `x` is reached from
/// `y` along a direction normal to `Π`; `z` is the metrical foot of `y` on
/// `Λ`. Draws that violate the hypotheses numerically are rejected.
pub fn sample_config(
    kind: SpaceForm,
    n: usize,
    p: usize,
    q: usize,
    seed: u64,
) -> Result<TrialConfig> {
    let dims = Dims::new(n, p, q)?;
    let model = Model::new(kind, n)?;
    let mut rng = TrialRng::new(seed, 0, Stream::Config);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(cfg) = attempt(model, dims, seed, &mut rng) {
            return Ok(cfg);
        }
    }
    Err(Error::SamplingExhausted)
}

fn attempt(model: Model, dims: Dims, seed: u64, rng: &mut TrialRng) -> Option<TrialConfig> {
    let c = random_point(model, rng);
    let (lambda, pi) = nested_through(&c, dims.p, dims.q, rng)?;

    let lt = lambda.tangent_basis(&c).ok()?;
    let along = random_tangent_within(&c, &lt, &[], rng)?;
    let w = exp_point(&along, rng.uniform(0.0, 1.0));

    let pt_w = pi.tangent_basis(&w).ok()?;
    let lt_w = lambda.tangent_basis(&w).ok()?;
    let nu = random_tangent_within(&w, &pt_w, &lt_w, rng)?;
    let y = exp_point(&nu, rng.uniform(0.2, 1.2));

    let cap = match model.kind() {
        SpaceForm::Spherical => 1.3_f64.min(core::f64::consts::FRAC_PI_2 - 0.1),
        _ => 1.3,
    };
    let mu = random_normal_tangent(&y, &pi, rng)?;
    let x = exp_point(&mu, rng.uniform(0.1, cap));

    let z = metrical_project(&lambda, &y).ok()?.foot;

    if pi.contains(&x).ok()? || lambda.contains(&y).ok()? {
        return None;
    }
    if orthogonality_residual(&x, &y, &pi).ok()? > EPS_GEO
        || orthogonality_residual(&y, &z, &lambda).ok()? > EPS_GEO
    {
        return None;
    }
    if model.kind() == SpaceForm::Spherical && pi.span().project(x.v()).ok()?.norm2() <= 0.05 {
        return None;
    }
    Some(TrialConfig {
        model,
        pi,
        lambda,
        x,
        y,
        z,
        seed,
    })
}

/// Negative control: `cfg` with `z` moved a distance `offset` along a random
/// direction of `Λ`, so `xz` is no longer orthogonal to `Λ`.
pub fn perturb_foot(cfg: &TrialConfig, offset: f64) -> Result<TrialConfig> {
    if !(offset.is_finite() && offset > 0.0) {
        return Err(Error::BadParameter);
    }
    let mut rng = TrialRng::new(cfg.seed, 0, Stream::Perturb);
    let tangent = cfg.lambda.tangent_basis(&cfg.z)?;
    for _ in 0..MAX_ATTEMPTS {
        if let Some(t) = random_tangent_within(&cfg.z, &tangent, &[], &mut rng) {
            let mut out = cfg.clone();
            out.z = exp_point(&t, offset);
            return Ok(out);
        }
    }
    Err(Error::SamplingExhausted)
}

/// `(Λ, Π)` with `Λ ⊂ Π`, of dimensions `q < p`, both through `c`.
pub(crate) fn nested_through(
    c: &ModelPoint,
    p: usize,
    q: usize,
    rng: &mut TrialRng,
) -> Option<(PSpace, PSpace)> {
    let model = c.model();
    let dim = model.ambient_dim();
    let raw: Vec<AmbientVector> = (0..p)
        .map(|_| model.to_tangent(c, &rng.gaussian(dim)))
        .collect();
    let frame = orthonormal_tangents(model, &raw);
    if frame.len() != p {
        return None;
    }
    let build = |k: usize| -> Option<PSpace> {
        match model.kind() {
            SpaceForm::Euclidean => {
                let dirs = ambient::orthonormalize(model.form(), &frame[..k]).ok()?;
                PSpace::affine(c.clone(), dirs).ok()
            }
            _ => {
                let mut gens = Vec::with_capacity(k + 1);
                gens.push(c.v().clone());
                gens.extend_from_slice(&frame[..k]);
                PSpace::from_span(model, ambient::orthonormalize(model.form(), &gens).ok()?).ok()
            }
        }
    };
    Some((build(q)?, build(p)?))
}

/// Random nested pair `Γ ⊂ Φ` of dimensions `q < p` in `model`, through a
/// random point.
pub fn random_nested_pair(
    model: Model,
    p: usize,
    q: usize,
    rng: &mut TrialRng,
) -> Result<(PSpace, PSpace)> {
    if q == 0 || q >= p || p >= model.n() {
        return Err(Error::BadDimension);
    }
    for _ in 0..MAX_ATTEMPTS {
        let c = random_point(model, rng);
        if let Some((gamma, phi)) = nested_through(&c, p, q, rng) {
            return Ok((phi, gamma));
        }
    }
    Err(Error::SamplingExhausted)
}

/// Random nested non-degenerate linear subspaces `G ⊂ F ⊂ E` with
/// `0 < dim G < dim F < dim E`.
pub fn random_nested_subspaces(form: Form, rng: &mut TrialRng) -> Result<(Subspace, Subspace)> {
    let dim = form.dim();
    if dim < 3 {
        return Err(Error::BadDimension);
    }
    for _ in 0..MAX_ATTEMPTS {
        let kf = 2 + (rng.next_u64() % (dim as u64 - 2)) as usize;
        let kg = 1 + (rng.next_u64() % (kf as u64 - 1)) as usize;
        let fv: Vec<AmbientVector> = (0..kf).map(|_| rng.gaussian(dim)).collect();
        let Ok(f) = ambient::orthonormalize(form, &fv) else {
            continue;
        };
        let gv: Vec<AmbientVector> = (0..kg)
            .map(|_| {
                let mut g = AmbientVector::zeros(dim);
                for b in f.basis() {
                    g.axpy(rng.normal(), b);
                }
                g
            })
            .collect();
        let Ok(g) = ambient::orthonormalize(form, &gv) else {
            continue;
        };
        return Ok((f, g));
    }
    Err(Error::SamplingExhausted)
}

/// Constructive quadruple `(x, y, z, u)` for the four-point form: `yzu` is
/// right at `z`, and `xy` is normal to the 2-space through `y, z, u`.
pub fn sample_four_points(model: Model, seed: u64) -> Result<[ModelPoint; 4]> {
    if model.n() < 3 {
        return Err(Error::BadDimension);
    }
    let mut rng = TrialRng::new(seed, 0, Stream::FourPoint);
    for _ in 0..MAX_ATTEMPTS {
        let z = random_point(model, &mut rng);
        let Some((_, plane)) = nested_through(&z, 2, 1, &mut rng) else {
            continue;
        };
        let frame = plane.tangent_basis(&z)?;
        let e1 = TangentVector::unit(&z, &frame[0])?;
        let e2 = TangentVector::unit(&z, &frame[1])?;
        let y = exp_point(&e1, rng.uniform(0.2, 1.2));
        let u = exp_point(&e2, rng.uniform(0.2, 1.2));
        let Some(m) = random_normal_tangent(&y, &plane, &mut rng) else {
            continue;
        };
        let x = exp_point(&m, rng.uniform(0.2, 1.2));
        return Ok([x, y, z, u]);
    }
    Err(Error::SamplingExhausted)
}
