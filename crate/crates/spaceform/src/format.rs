//! JSON wire formats.
//!
//! Points are `{"model": "S"|"E"|"H", "n": 3, "v": [..]}`. A p-space is
//! `{"model", "n", "p", "span": [[..], ..]}`; on the quadrics `span` holds
//! `p + 1` vectors spanning `Sp(Φ)`, in Euclidean space it holds `p`
//! directions and a `"base"` point is required. Reports are JSON lines: one
//! [`Header`] followed by one [`ReportLine`] per trial.

use serde::{Deserialize, Serialize};

use spaceform_core::ambient::AmbientVector;
use spaceform_core::geometry::{make_point, make_pspace, Model, ModelPoint, PSpace, SpaceForm};
use spaceform_core::harness::{ReportDetail, TrialReport};
use spaceform_core::projections::ProjectionResult;

use crate::{Error, Result};

/// Version written into report headers.
pub const REPORT_VERSION: u32 = 1;

/// Largest model dimension accepted from user input.
pub const MAX_N: usize = 64;

/// Parses a model tag.
pub fn parse_kind(tag: &str) -> Result<SpaceForm> {
    SpaceForm::from_tag(tag).ok_or_else(|| Error::Input(format!("unknown model {tag:?}")))
}

fn model(tag: &str, n: usize) -> Result<Model> {
    if n > MAX_N {
        return Err(Error::Input(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(Model::new(parse_kind(tag)?, n)?)
}

fn vector(v: &[f64]) -> Result<AmbientVector> {
    Ok(AmbientVector::new(v.to_vec())?)
}

/// A point on the wire.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDto {
    /// `"S"`, `"E"` or `"H"`.
    pub model: String,
    /// Model dimension.
    pub n: usize,
    /// Ambient coordinates.
    pub v: Vec<f64>,
}

impl PointDto {
    /// Validates and builds the point (snapping within the model tolerance).
    pub fn to_point(&self) -> Result<ModelPoint> {
        let m = model(&self.model, self.n)?;
        Ok(make_point(m, vector(&self.v)?)?)
    }

    /// Wire form of a point.
    pub fn from_point(p: &ModelPoint) -> Self {
        PointDto {
            model: p.model().kind().tag().to_string(),
            n: p.model().n(),
            v: p.v().coords().to_vec(),
        }
    }
}

/// A p-space on the wire.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PSpaceDto {
    /// `"S"`, `"E"` or `"H"`.
    pub model: String,
    /// Model dimension.
    pub n: usize,
    /// Intrinsic dimension.
    pub p: usize,
    /// Spanning vectors (quadrics) or directions (Euclidean).
    pub span: Vec<Vec<f64>>,
    /// Base point, Euclidean only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<f64>>,
}

impl PSpaceDto {
    /// Validates and builds the p-space.
    pub fn to_pspace(&self) -> Result<PSpace> {
        let m = model(&self.model, self.n)?;
        let mut gens = Vec::with_capacity(self.span.len() + 1);
        let expected = match (m.kind(), &self.base) {
            (SpaceForm::Euclidean, Some(b)) => {
                gens.push(vector(b)?);
                self.p
            }
            (SpaceForm::Euclidean, None) => {
                return Err(Error::Input("Euclidean p-space needs \"base\"".into()))
            }
            (_, Some(_)) => return Err(Error::Input("\"base\" is Euclidean only".into())),
            (_, None) => self.p + 1,
        };
        if self.span.len() != expected {
            return Err(Error::Input(format!(
                "p = {} needs {expected} span vectors, got {}",
                self.p,
                self.span.len()
            )));
        }
        for s in &self.span {
            gens.push(vector(s)?);
        }
        Ok(make_pspace(m, &gens)?)
    }

    /// Wire form of a p-space (orthonormal span).
    pub fn from_pspace(phi: &PSpace) -> Self {
        PSpaceDto {
            model: phi.model().kind().tag().to_string(),
            n: phi.model().n(),
            p: phi.p(),
            span: phi
                .span()
                .basis()
                .iter()
                .map(|b| b.coords().to_vec())
                .collect(),
            base: phi.base().map(|b| b.v().coords().to_vec()),
        }
    }
}

/// Input of `project`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectInput {
    /// The point to project.
    pub point: PointDto,
    /// The target p-space.
    pub pspace: PSpaceDto,
}

/// Input of `distance`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceInput {
    /// First point.
    pub x: PointDto,
    /// Second point.
    pub y: PointDto,
}

/// Input of `gupta`: the four points of the four-point form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourPointInput {
    /// Apex.
    pub x: PointDto,
    /// Foot on the plane.
    pub y: PointDto,
    /// Vertex of the conclusion angle.
    pub z: PointDto,
    /// Fourth point.
    pub u: PointDto,
}

/// Output of `project`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionDto {
    /// Nearest point.
    pub foot: PointDto,
    /// Distance to the foot.
    pub dist: f64,
    /// Orthogonality defect at the foot.
    pub ortho_residual: f64,
    /// Poorly conditioned spherical input.
    pub low_confidence: bool,
}

impl From<&ProjectionResult> for ProjectionDto {
    fn from(r: &ProjectionResult) -> Self {
        ProjectionDto {
            foot: PointDto::from_point(&r.foot),
            dist: r.dist,
            ortho_residual: r.ortho_residual,
            low_confidence: r.low_confidence,
        }
    }
}

/// Error payload written alongside a non-zero exit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDto {
    /// Stable error name.
    pub error: String,
    /// Human-readable message.
    pub message: String,
}

impl From<&spaceform_core::Error> for ErrorDto {
    fn from(e: &spaceform_core::Error) -> Self {
        ErrorDto {
            error: e.name().to_string(),
            message: e.to_string(),
        }
    }
}

/// Seeds used by a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    /// Base seed given on the command line.
    pub base: u64,
    /// Number of trials derived from it.
    pub count: u64,
}

/// First line of a report file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    /// Format version.
    pub version: u32,
    /// Model tag.
    pub model: String,
    /// Model dimension.
    pub n: usize,
    /// Dimension of `Π`; absent when the run cycles through every `(p, q)`.
    pub p: Option<usize>,
    /// Dimension of `Λ`; absent when the run cycles through every `(p, q)`.
    pub q: Option<usize>,
    /// Seeds.
    pub seeds: Seeds,
    /// Tolerance.
    pub tol: f64,
}

/// Check-specific part of a report line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DetailDto {
    /// See [`ReportDetail::ThreePerpendiculars`].
    ThreePerpendiculars {
        /// Dimension of `Π`.
        p: usize,
        /// Dimension of `Λ`.
        q: usize,
        /// Tangent-basis residual.
        basis_residual: f64,
        /// Probe residual.
        probe_residual: f64,
        /// Probe consistency flag.
        probes_consistent: bool,
    },
    /// See [`ReportDetail::FourPoint`].
    FourPoint {
        /// Hypothesis angles.
        hypothesis: [f64; 3],
        /// Conclusion angle.
        conclusion: f64,
    },
    /// See [`ReportDetail::Counterexample`].
    Counterexample {
        /// Hypothesis angles.
        hypothesis: [f64; 3],
        /// Angles of `yzu`.
        yzu_angles: [f64; 3],
        /// No right angle in `yzu`.
        non_right: bool,
    },
}

/// One report line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    /// Trial index.
    pub trial: u64,
    /// Trial seed.
    pub seed: u64,
    /// Model tag.
    pub model: String,
    /// Model dimension.
    pub n: usize,
    /// Headline residual.
    pub residual: f64,
    /// Tolerance.
    pub tol: f64,
    /// Probe count.
    pub n_probe: usize,
    /// Verdict.
    pub pass: bool,
    /// Seconds, only written when timing was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
    /// Check-specific fields.
    pub detail: DetailDto,
}

impl ReportLine {
    /// Wire form of a report; `timing` keeps the wall time.
    pub fn new(r: &TrialReport, timing: bool) -> Self {
        let detail = match r.detail {
            ReportDetail::ThreePerpendiculars {
                p,
                q,
                basis_residual,
                probe_residual,
                probes_consistent,
            } => DetailDto::ThreePerpendiculars {
                p,
                q,
                basis_residual,
                probe_residual,
                probes_consistent,
            },
            ReportDetail::FourPoint {
                hypothesis,
                conclusion,
            } => DetailDto::FourPoint {
                hypothesis,
                conclusion,
            },
            ReportDetail::Counterexample {
                hypothesis,
                yzu_angles,
                non_right,
            } => DetailDto::Counterexample {
                hypothesis,
                yzu_angles,
                non_right,
            },
        };
        ReportLine {
            trial: r.trial,
            seed: r.seed,
            model: r.model.kind().tag().to_string(),
            n: r.model.n(),
            residual: r.residual,
            tol: r.tol,
            n_probe: r.n_probe,
            pass: r.pass,
            wall_time: timing.then_some(r.wall_time),
            detail,
        }
    }
}

/// Serializes a header and reports as JSON lines, sorted by trial index.
pub fn write_report(
    out: &mut (impl std::io::Write + ?Sized),
    header: &Header,
    reports: &[TrialReport],
    timing: bool,
) -> Result<()> {
    let mut sorted: Vec<&TrialReport> = reports.iter().collect();
    sorted.sort_by_key(|r| r.trial);
    serde_json::to_writer(&mut *out, header)?;
    out.write_all(b"\n")?;
    for r in sorted {
        serde_json::to_writer(&mut *out, &ReportLine::new(r, timing))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_round_trip() {
        let json = r#"{"model":"H","n":2,"v":[1.0,0.0,0.0]}"#;
        let dto: PointDto = serde_json::from_str(json).unwrap();
        let p = dto.to_point().unwrap();
        assert_eq!(PointDto::from_point(&p), dto);
    }

    #[test]
    fn rejects_bad_points() {
        let bad = [
            r#"{"model":"Q","n":2,"v":[1.0,0.0,0.0]}"#,
            r#"{"model":"H","n":2,"v":[-1.0,0.0,0.0]}"#,
            r#"{"model":"S","n":2,"v":[1.0,0.0]}"#,
            r#"{"model":"S","n":1000,"v":[1.0]}"#,
        ];
        for json in bad {
            let dto: PointDto = serde_json::from_str(json).unwrap();
            assert!(dto.to_point().is_err(), "{json}");
        }
        assert!(serde_json::from_str::<PointDto>(r#"{"model":"S","n":2}"#).is_err());
    }

    #[test]
    fn pspace_shapes() {
        let eq = PSpaceDto {
            model: "S".into(),
            n: 2,
            p: 1,
            span: vec![vec![0., 1., 0.], vec![0., 0., 1.]],
            base: None,
        };
        let phi = eq.to_pspace().unwrap();
        assert_eq!(phi.p(), 1);
        let back = PSpaceDto::from_pspace(&phi).to_pspace().unwrap();
        assert!(back.same_as(&phi));

        let mut missing_base = eq.clone();
        missing_base.model = "E".into();
        assert!(matches!(missing_base.to_pspace(), Err(Error::Input(_))));

        let plane = PSpaceDto {
            model: "E".into(),
            n: 3,
            p: 2,
            span: vec![vec![1., 0., 0.], vec![0., 1., 0.]],
            base: Some(vec![0., 0., 5.]),
        };
        let phi = plane.to_pspace().unwrap();
        assert_eq!(PSpaceDto::from_pspace(&phi).base, Some(vec![0., 0., 5.]));

        let mut wrong_count = plane;
        wrong_count.p = 1;
        assert!(matches!(wrong_count.to_pspace(), Err(Error::Input(_))));
    }
}
