use thiserror::Error;

use crate::surfaces::dsl::DslError;

/// Errors raised by the geometry pipeline.
///
/// Degeneracies that are pointwise by nature (umbilic points, degenerate
/// polar surfaces) are reported through this type at the point where they
/// happen; grid sweeps turn them into masks rather than failing the sweep.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("jet order exhausted: {context}")]
    OrderExhausted { context: String },

    #[error("jet {op} needs a constant term bounded away from zero (|c| = {value:.3e})")]
    SingularJet { op: &'static str, value: f64 },

    #[error("jet {op} is undefined for constant term {value}")]
    JetDomain { op: &'static str, value: String },

    #[error("motion does not preserve the (4,2) form (max deviation {deviation:.3e})")]
    MotionNotOrthogonal { deviation: f64 },

    #[error("projective point has a zero representative")]
    ZeroRepresentative,

    #[error("point is not on the quadric <x,x> = {expected} (residual {residual:.3e})")]
    NotOnQuadric { expected: f64, residual: f64 },

    #[error("parameter {name} = {value} is out of range: {reason}")]
    ParameterOutOfRange {
        name: String,
        value: f64,
        reason: &'static str,
    },

    #[error("surface is not spacelike here (<Y_z, Y_zbar> = {value:.3e})")]
    NotSpacelike { value: f64 },

    #[error("chart is not a conformal light-cone lift (residual {residual:.3e})")]
    NotConformal { residual: f64 },

    #[error("normal plane is not Lorentzian within tolerance (gram det = {det:.3e})")]
    NormalPlaneDegenerate { det: f64 },

    #[error("no usable gauge reference vector (best pairing {best:.3e})")]
    GaugeReferenceDegenerate { best: f64 },

    #[error("transform {step} degenerates here (|lambda| = {lambda:.3e})")]
    DegenerateTransform { step: &'static str, lambda: f64 },

    #[error("surface is not Willmore to tolerance (residual {residual:.3e} > {bound:.3e})")]
    NotWillmore { residual: f64, bound: f64 },

    #[error("surface is not S-Willmore to tolerance (deviation {deviation:.3e} > {bound:.3e})")]
    NotSWillmore { deviation: f64, bound: f64 },

    #[error("energy integrand is singular (|<kappa, kappa bar>| = {value:.3e} exceeds {bound:.3e})")]
    IntegrandSingular { value: f64, bound: f64 },

    #[error("unknown surface {0:?}")]
    UnknownSurface(String),

    #[error("unknown transform {0:?} (expected L, R, adjL or adjR)")]
    UnknownTransform(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error(transparent)]
    Dsl(#[from] DslError),
}

impl GeomError {
    /// True for errors that describe a pointwise degeneracy of the surface
    /// (masked in grid sweeps) as opposed to a configuration problem.
    pub fn is_pointwise_degeneracy(&self) -> bool {
        matches!(
            self,
            GeomError::NotSpacelike { .. }
                | GeomError::NormalPlaneDegenerate { .. }
                | GeomError::GaugeReferenceDegenerate { .. }
                | GeomError::DegenerateTransform { .. }
                | GeomError::SingularJet { .. }
        )
    }

    /// Stable machine-readable tag, used in CLI error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            GeomError::OrderExhausted { .. } => "OrderExhausted",
            GeomError::SingularJet { .. } => "SingularJet",
            GeomError::JetDomain { .. } => "DomainError",
            GeomError::MotionNotOrthogonal { .. } => "MotionNotOrthogonal",
            GeomError::ZeroRepresentative => "ZeroRepresentative",
            GeomError::NotOnQuadric { .. } => "NotOnQuadric",
            GeomError::ParameterOutOfRange { .. } => "ParameterOutOfRange",
            GeomError::NotSpacelike { .. } => "NotSpacelike",
            GeomError::NotConformal { .. } => "NotConformal",
            GeomError::NormalPlaneDegenerate { .. } => "NormalPlaneDegenerate",
            GeomError::GaugeReferenceDegenerate { .. } => "GaugeReferenceDegenerate",
            GeomError::DegenerateTransform { .. } => "DegenerateTransform",
            GeomError::NotWillmore { .. } => "NotWillmore",
            GeomError::NotSWillmore { .. } => "NotSWillmore",
            GeomError::IntegrandSingular { .. } => "IntegrandSingular",
            GeomError::UnknownSurface(_) => "UnknownSurface",
            GeomError::UnknownTransform(_) => "UnknownTransform",
            GeomError::InvalidGrid(_) => "InvalidGrid",
            GeomError::Dsl(e) => e.kind(),
        }
    }
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
