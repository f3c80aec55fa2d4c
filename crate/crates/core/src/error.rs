use thiserror::Error;

use crate::tangency::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("linear system is ill-conditioned (condition estimate {cond:e})")]
    IllConditioned { cond: f64 },

    #[error("zero without sign change near t = {t} (tangency of order >= 2)")]
    DegenerateZero { t: f64 },

    #[error("curve is not immersed near t = {t} (|tangent| = {speed:e})")]
    NotImmersed { t: f64, speed: f64 },

    #[error("angular defect {defect} turns exceeds 0.25")]
    AngularDefect { defect: f64 },

    #[error("point ({x}, {y}) lies on the curve (distance {distance:e})")]
    PointOnCurve { x: f64, y: f64, distance: f64 },

    #[error("winding by angle summation ({angle}) disagrees with ray crossing count ({ray})")]
    OracleMismatch { angle: i64, ray: i64 },

    #[error("non-transversal self-intersection at t1 = {t1}, t2 = {t2}")]
    NonTransversalSelfIntersection { t1: f64, t2: f64 },

    #[error("degenerate point configuration: {0}")]
    DegenerateConfig(String),

    #[error("pencil member requested through a base point")]
    BasePointHit,

    #[error("N_d overflows exact integer range at d = {d}")]
    Overflow { d: u32 },

    #[error("value not tabulated for d = {d}; supply it in the scenario")]
    Unsupported { d: u32 },

    #[error("tangency at t = {t} is not of first order")]
    HigherOrderTangency { t: f64 },

    #[error("curve is tangent to a reducible pencil member at t = {t}")]
    ReducibleTangency { t: f64 },

    #[error("configuration violates general position: {}", format_violations(.0))]
    Audit(Vec<Violation>),

    #[error("count changed between s = {s_lo} and s = {s_hi} without a resolved crossing")]
    UnresolvedCrossing { s_lo: f64, s_hi: f64 },

    #[error("resolution arc does not splice C1 onto the base curve: {0}")]
    SpliceNotC1(String),

    #[error("resolution {eps:?} is not generic: {reason}")]
    ResolutionNotGeneric { eps: Vec<i8>, reason: String },

    #[error("alternating sum {sum} != 0 for spec {spec}")]
    CounterexampleFound { sum: i64, spec: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Short machine-readable tag used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IllConditioned { .. } => "IllConditioned",
            Error::DegenerateZero { .. } => "DegenerateZero",
            Error::NotImmersed { .. } => "NotImmersed",
            Error::AngularDefect { .. } => "AngularDefect",
            Error::PointOnCurve { .. } => "PointOnCurve",
            Error::OracleMismatch { .. } => "OracleMismatch",
            Error::NonTransversalSelfIntersection { .. } => "NonTransversalSelfIntersection",
            Error::DegenerateConfig(_) => "DegenerateConfig",
            Error::BasePointHit => "BasePointHit",
            Error::Overflow { .. } => "Overflow",
            Error::Unsupported { .. } => "Unsupported",
            Error::HigherOrderTangency { .. } => "HigherOrderTangency",
            Error::ReducibleTangency { .. } => "ReducibleTangency",
            Error::Audit(_) => "Audit",
            Error::UnresolvedCrossing { .. } => "UnresolvedCrossing",
            Error::SpliceNotC1(_) => "SpliceNotC1",
            Error::ResolutionNotGeneric { .. } => "ResolutionNotGeneric",
            Error::CounterexampleFound { .. } => "CounterexampleFound",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }

    /// True for failures caused by the input sitting on (or numerically near)
    /// the singular discriminant.
    pub fn is_general_position_failure(&self) -> bool {
        matches!(
            self,
            Error::Audit(_)
                | Error::PointOnCurve { .. }
                | Error::NonTransversalSelfIntersection { .. }
                | Error::HigherOrderTangency { .. }
                | Error::ReducibleTangency { .. }
                | Error::BasePointHit
                | Error::ResolutionNotGeneric { .. }
        )
    }
}
