use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Vector length does not match the ambient dimension.
    DimensionMismatch {
        /// Expected length.
        expected: usize,
        /// Actual length.
        found: usize,
    },
    /// A vector had fewer than two coordinates or a non-finite entry.
    InvalidVector,
    /// The restriction of the form to a subspace is degenerate.
    DegenerateSubspace,
    /// The supplied vectors are linearly dependent.
    LinearDependence,
    /// The point does not satisfy the model equation.
    OffManifold,
    /// Two values belong to different models.
    ModelMismatch,
    /// An intrinsic or subspace dimension is out of range.
    BadDimension,
    /// A hyperbolic span does not meet the hyperboloid transversally.
    NotIntersecting,
    /// Radial projection called outside its domain.
    OutsideDomain,
    /// The operation has no meaning in this model.
    UnsupportedModel,
    /// Two points coincide where distinct points are required.
    CoincidentPoints,
    /// Two points on the sphere are antipodal.
    AntipodalPoints,
    /// The two 2-spaces are the same.
    IdenticalSubspaces,
    /// Two Euclidean 2-spaces are parallel.
    EmptyIntersection,
    /// The point does not lie on both 2-spaces.
    PointNotOnBoth,
    /// The point does not lie on the p-space.
    PointNotOnSubspace,
    /// The point lies on the p-space, so no geodesic to a foot exists.
    PointOnSubspace,
    /// Every point of the p-space is a metrical projection.
    NonUniqueProjection,
    /// A scalar parameter is out of range.
    BadParameter,
    /// Rejection sampling gave up.
    SamplingExhausted,
    /// The oracle only handles 1- and 2-spaces.
    UnsupportedDimension,
    /// A hypothesis angle of the four-point form is not right.
    HypothesisNotMet {
        /// Which triangle failed, e.g. `"xyz@y"`.
        triangle: &'static str,
        /// The measured angle in radians.
        angle: f64,
    },
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidVector => "InvalidVector",
            Error::DegenerateSubspace => "DegenerateSubspace",
            Error::LinearDependence => "LinearDependence",
            Error::OffManifold => "OffManifold",
            Error::ModelMismatch => "ModelMismatch",
            Error::BadDimension => "BadDimension",
            Error::NotIntersecting => "NotIntersecting",
            Error::OutsideDomain => "OutsideDomain",
            Error::UnsupportedModel => "UnsupportedModel",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::AntipodalPoints => "AntipodalPoints",
            Error::IdenticalSubspaces => "IdenticalSubspaces",
            Error::EmptyIntersection => "EmptyIntersection",
            Error::PointNotOnBoth => "PointNotOnBoth",
            Error::PointNotOnSubspace => "PointNotOnSubspace",
            Error::PointOnSubspace => "PointOnSubspace",
            Error::NonUniqueProjection => "NonUniqueProjection",
            Error::BadParameter => "BadParameter",
            Error::SamplingExhausted => "SamplingExhausted",
            Error::UnsupportedDimension => "UnsupportedDimension",
            Error::HypothesisNotMet { .. } => "HypothesisNotMet",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidVector => f.write_str("vector needs at least 2 finite coordinates"),
            Error::DegenerateSubspace => f.write_str("restriction of the form is degenerate"),
            Error::LinearDependence => f.write_str("vectors are linearly dependent"),
            Error::OffManifold => f.write_str("point is not on the model"),
            Error::ModelMismatch => f.write_str("arguments belong to different models"),
            Error::BadDimension => f.write_str("dimension out of range"),
            Error::NotIntersecting => f.write_str("span does not meet the hyperboloid"),
            Error::OutsideDomain => f.write_str("vector outside the radial projection domain"),
            Error::UnsupportedModel => f.write_str("operation undefined for this model"),
            Error::CoincidentPoints => f.write_str("points coincide"),
            Error::AntipodalPoints => f.write_str("points are antipodal"),
            Error::IdenticalSubspaces => f.write_str("subspaces are identical"),
            Error::EmptyIntersection => f.write_str("subspaces do not intersect"),
            Error::PointNotOnBoth => f.write_str("point is not on both subspaces"),
            Error::PointNotOnSubspace => f.write_str("point is not on the subspace"),
            Error::PointOnSubspace => f.write_str("point already lies on the subspace"),
            Error::NonUniqueProjection => {
                f.write_str("every point of the subspace is a metrical projection")
            }
            Error::BadParameter => f.write_str("parameter out of range"),
            Error::SamplingExhausted => f.write_str("rejection sampling exhausted its attempts"),
            Error::UnsupportedDimension => f.write_str("oracle supports 1- and 2-spaces only"),
            Error::HypothesisNotMet { triangle, angle } => {
                write!(f, "hypothesis not met: angle {triangle} = {angle}")
            }
        }
    }
}

impl core::error::Error for Error {}
