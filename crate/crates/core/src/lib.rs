//! Kinematics of serial-link robots with revolute, prismatic and helical
//! joints, in product-of-exponentials (POE) and Denavit-Hartenberg (D-H)
//! form, with an analytic POE to D-H conversion and identifiability counts.
//!
//! The math is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`, which is what the file formats, fixtures
//! and command-line tool use.

pub mod conversion;
pub mod error;
pub mod harness;
pub mod identifiability;
pub mod kinematics;
pub mod liegroup;
pub mod scalar;

pub use conversion::{
    decompose_tool, decompose_transform, factor_helical, factor_prismatic, factor_revolute,
    poe_to_dh, ConversionOptions, DhFactor, ToolSplit,
};
pub use error::KinematicsError;
pub use identifiability::{census, counts, IdentifiabilityReport, JointCensus};
pub use kinematics::{
    dh_fk, dh_to_poe, local_to_base, poe_fk, q_screw, reduce_to_base, tool_to_base, Convention,
    DhFrame, DhModel, DhRow, DhTool, JointKind, JointSpec, JointUnit, PoeModel,
};
pub use liegroup::{
    adjoint, classify, elem, euler_zyx, normalize, normalize_with, skew, twist_exp,
    twist_from_axis, twist_log, Axis, ElemKind, EulerZyx, MotionClass, NormalizedTwist, Transform,
    Twist,
};
pub use scalar::Real;

pub type Twist64 = Twist<f64>;
pub type Transform64 = Transform<f64>;
pub type NormalizedTwist64 = NormalizedTwist<f64>;
pub type PoeModel64 = PoeModel<f64>;
pub type DhModel64 = DhModel<f64>;
pub type DhRow64 = DhRow<f64>;
pub type DhFrame64 = DhFrame<f64>;

pub type Twist32 = Twist<f32>;
pub type Transform32 = Transform<f32>;
pub type PoeModel32 = PoeModel<f32>;
pub type DhModel32 = DhModel<f32>;
