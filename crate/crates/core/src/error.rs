use thiserror::Error;

/// Numerical failures raised by the geometry routines.
///
/// Every variant has a stable [`Error::token`] used on the command line and
/// in convergence CSV files.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion norm {norm} is outside the accepted range [0.5, 2]")]
    NotUnit { norm: f64 },

    #[error("vector ({x}, {y}, {z}) cannot be normalized onto the sphere")]
    ZeroVector { x: f64, y: f64, z: f64 },

    #[error("quaternion is off the circle fiber (|y| = {y}, |z| = {z})")]
    OffFiber { y: f64, z: f64 },

    #[error("velocity is not tangent to the sphere (Re(conj(q) qdot) = {residual})")]
    NotTangent { residual: f64 },

    #[error("points are nearly antipodal (dot = {dot})")]
    AntipodalPair { dot: f64 },

    #[error("edge {index} joins exactly antipodal points; its shortest path is not unique")]
    ExactlyAntipodal { index: usize },

    #[error("exterior angle at vertex {index} is undefined")]
    DegenerateVertex { index: usize },

    #[error("vertex {index} is too close to the pole or its antipode")]
    PoleTooClose { index: usize },

    #[error("no valid pole found for this polygon")]
    NoValidPole,

    #[error("triangle {index} is degenerate")]
    DegenerateTriangle { index: usize },

    #[error("lift point {index} does not project onto its vertex (error {error})")]
    InvalidLift { index: usize, error: f64 },

    #[error("lift has {got} points for a polygon with {expected} vertices")]
    LiftLength { expected: usize, got: usize },

    #[error("space polygon has only {found} non-degenerate edges (need 3)")]
    TooFewEdges { found: usize },

    #[error("sample count {n} is too small (need at least 3)")]
    TooFewSamples { n: usize },
}

impl Error {
    /// Stable identifier, e.g. `DegenerateVertex`.
    pub fn token(&self) -> &'static str {
        match self {
            Error::NotUnit { .. } => "NotUnit",
            Error::ZeroVector { .. } => "ZeroVector",
            Error::OffFiber { .. } => "OffFiber",
            Error::NotTangent { .. } => "NotTangent",
            Error::AntipodalPair { .. } => "AntipodalPair",
            Error::ExactlyAntipodal { .. } => "ExactlyAntipodal",
            Error::DegenerateVertex { .. } => "DegenerateVertex",
            Error::PoleTooClose { .. } => "PoleTooClose",
            Error::NoValidPole => "NoValidPole",
            Error::DegenerateTriangle { .. } => "DegenerateTriangle",
            Error::InvalidLift { .. } => "InvalidLift",
            Error::LiftLength { .. } => "LiftLength",
            Error::TooFewEdges { .. } => "TooFewEdges",
            Error::TooFewSamples { .. } => "TooFewSamples",
        }
    }

    /// Vertex, edge or triangle index the failure refers to, if any.
    pub fn index(&self) -> Option<usize> {
        match *self {
            Error::ExactlyAntipodal { index }
            | Error::DegenerateVertex { index }
            | Error::PoleTooClose { index }
            | Error::DegenerateTriangle { index }
            | Error::InvalidLift { index, .. } => Some(index),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
