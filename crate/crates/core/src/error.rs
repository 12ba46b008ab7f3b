use thiserror::Error;

use crate::kinematics::Convention;

/// Failures raised by the math and model layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("twist has both angular and linear parts below {eps:e}")]
    ZeroTwist { eps: f64 },

    #[error("axis direction must have unit norm, got {norm}")]
    NonUnitDirection { norm: f64 },

    #[error("twist is not rotational (|omega| = {omega_norm})")]
    NotRotational { omega_norm: f64 },

    #[error("twist is not a pure translation (|omega| = {omega_norm})")]
    NotTranslational { omega_norm: f64 },

    #[error("joint declared revolute has pitch {pitch} (|pitch| must not exceed eps)")]
    PitchedRevolute { pitch: f64 },

    #[error("expected a {expected:?}-convention model, got {found:?}")]
    ConventionMismatch {
        expected: Convention,
        found: Convention,
    },

    #[error("expected {expected} joint values, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("local POE model with {joints} joints needs {expected} frames, got {found}")]
    FrameCountMismatch {
        joints: usize,
        expected: usize,
        found: usize,
    },

    #[error("{convention:?}-convention model is missing its tool twist")]
    MissingToolTwist { convention: Convention },

    #[error("joint {index}: {source}")]
    Joint {
        index: usize,
        #[source]
        source: Box<KinematicsError>,
    },
}

impl KinematicsError {
    pub(crate) fn at_joint(self, index: usize) -> Self {
        KinematicsError::Joint {
            index,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = KinematicsError> = std::result::Result<T, E>;
