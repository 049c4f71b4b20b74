use crate::exactnum::IntervalSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("chart `{chart}`: {reason}")]
    BadExtent { chart: String, reason: String },
    #[error("obstacle segment #{index}: {reason}")]
    BadObstacle { index: usize, reason: String },
    #[error("duplicate chart id `{0}`")]
    DuplicateChart(String),
    #[error("unknown chart id `{0}`")]
    UnknownChart(String),
    #[error("gluing #{index} ({from} -> {to}): gluing domain must be open, got {domain}")]
    DomainNotOpen {
        index: usize,
        from: String,
        to: String,
        domain: String,
    },
    #[error("gluing #{index} ({from} -> {to}): {what} {set} is not inside the interior of chart `{chart}`")]
    OutsideChart {
        index: usize,
        from: String,
        to: String,
        what: &'static str,
        set: String,
        chart: String,
    },
    #[error("gluing #{index}: slope must be nonzero")]
    ZeroSlope { index: usize },
    #[error("point {param} is outside the extent of chart `{chart}`")]
    PointOutsideChart { chart: String, param: String },
    #[error("saturation did not reach a fixpoint within {rounds} rounds (map counts per round: {counts:?})")]
    NotTame { rounds: usize, counts: Vec<usize> },
    #[error(
        "chart `{chart}` is glued to itself by {map}: distinct points of one chart are identified"
    )]
    NotInjective { chart: String, map: String },
    #[error("test map is not continuous: {0}")]
    NotContinuous(Box<Discontinuity>),
    #[error("{0}")]
    NotApplicable(String),
    #[error("points denote the same point of the manifold")]
    SamePoint,
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// A glued pair of points where a test map takes different values.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("chart `{chart}` at {param} has value {left}, glued point on chart `{other}` at {other_param} has value {right}")]
pub struct Discontinuity {
    pub chart: String,
    pub param: String,
    pub left: String,
    pub other: String,
    pub other_param: String,
    pub right: String,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "E_PARSE",
            Error::Rational(_) => "E_RATIONAL",
            Error::BadExtent { .. } => "E_EXTENT",
            Error::BadObstacle { .. } => "E_OBSTACLE",
            Error::DuplicateChart(_) => "E_DUPLICATE_CHART",
            Error::UnknownChart(_) => "E_UNKNOWN_CHART",
            Error::DomainNotOpen { .. } => "E_DOMAIN_NOT_OPEN",
            Error::OutsideChart { .. } => "E_OUTSIDE_CHART",
            Error::ZeroSlope { .. } => "E_ZERO_SLOPE",
            Error::PointOutsideChart { .. } => "E_POINT_OUTSIDE_CHART",
            Error::NotTame { .. } => "E_NOT_TAME",
            Error::NotInjective { .. } => "E_NOT_INJECTIVE",
            Error::NotContinuous(_) => "E_NOT_CONTINUOUS",
            Error::NotApplicable(_) => "E_NOT_APPLICABLE",
            Error::SamePoint => "E_SAME_POINT",
            Error::UnknownMethod(_) => "E_UNKNOWN_METHOD",
            Error::Internal(_) => "E_INTERNAL",
            Error::Io(_) => "E_IO",
        }
    }

    /// Internal assertion failures, as opposed to rejected input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub(crate) fn set_str(s: &IntervalSet) -> String {
    s.to_string()
}
