//! Robot model containers and forward kinematics.
//!
//! A [`PoeModel`] holds joint twists in one of three frame conventions:
//!
//! * `Base`:  `H = e^(xi_1 (q_1+dq_1)) ... e^(xi_n (q_n+dq_n)) e^(xi_T)`
//! * `Tool`:  `H = e^(xi_T) e^(xi_1^T (q_1+dq_1)) ... e^(xi_n^T (q_n+dq_n))`
//! * `Local`: `H = H_1 e^(xi_1^H (q_1+dq_1)) H_2 ... H_n e^(xi_n^H (q_n+dq_n)) H_(n+1)`
//!
//! Joint twists may be unnormalized; the norm `qbar` multiplies `(q + dq)`.
//! The D-H side is a [`DhModel`]: a base row, one row per joint preceded by
//! that joint's screw `Q(q) = Rz(j q) Tz(k q)`, and a two-parameter tool row.

use crate::error::{KinematicsError, Result};
use crate::liegroup::{
    classify, normalize_with, twist_exp, twist_log, MotionClass, NormalizedTwist, Transform, Twist,
    DEFAULT_EPS,
};
use crate::scalar::{lit, to_f64, wrap_angle, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    Base,
    Tool,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JointKind {
    Revolute,
    Prismatic,
    Helical,
}

/// Unit of a joint variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointUnit {
    Radian,
    Millimeter,
}

impl JointKind {
    pub fn unit(self) -> JointUnit {
        match self {
            JointKind::Prismatic => JointUnit::Millimeter,
            _ => JointUnit::Radian,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            JointKind::Revolute => "revolute",
            JointKind::Prismatic => "prismatic",
            JointKind::Helical => "helical",
        }
    }
}

/// One joint of a POE model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointSpec<T: Real> {
    /// Possibly unnormalized twist in the model's convention frame.
    pub twist: Twist<T>,
    /// Joint offset `dq`, in the joint's own unit.
    pub offset: T,
    /// Overrides numeric classification when set.
    pub declared: Option<JointKind>,
}

/// A joint after normalization and classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedJoint<T: Real> {
    pub unit: NormalizedTwist<T>,
    pub qbar: T,
    pub kind: JointKind,
}

impl<T: Real> ResolvedJoint<T> {
    /// Pitch coefficient `k` of the D-H screw: 0, 1 or `h`.
    pub fn pitch(&self) -> T {
        match self.unit.class {
            MotionClass::Helical(h) => h,
            _ => T::zero(),
        }
    }
}

impl<T: Real> JointSpec<T> {
    pub fn new(twist: Twist<T>) -> Self {
        Self {
            twist,
            offset: T::zero(),
            declared: None,
        }
    }

    pub fn with_offset(mut self, offset: T) -> Self {
        self.offset = offset;
        self
    }

    pub fn declared(mut self, kind: JointKind) -> Self {
        self.declared = Some(kind);
        self
    }

    /// Normalizes the twist and settles its joint kind.
    pub fn resolve(&self, eps: T) -> Result<ResolvedJoint<T>> {
        let (mut unit, qbar) = normalize_with(&self.twist, eps)?;
        let omega_norm = to_f64(self.twist.omega.norm());
        let kind = match (self.declared, unit.class) {
            (None, MotionClass::Rotation) => JointKind::Revolute,
            (None, MotionClass::Translation) => JointKind::Prismatic,
            (None, MotionClass::Helical(_)) => JointKind::Helical,
            (Some(JointKind::Prismatic), MotionClass::Translation) => JointKind::Prismatic,
            (Some(JointKind::Prismatic), _) => {
                return Err(KinematicsError::NotTranslational { omega_norm })
            }
            (Some(_), MotionClass::Translation) => {
                return Err(KinematicsError::NotRotational { omega_norm })
            }
            (Some(JointKind::Revolute), MotionClass::Helical(h)) if h.abs() > eps => {
                return Err(KinematicsError::PitchedRevolute { pitch: to_f64(h) })
            }
            (Some(JointKind::Revolute), _) => {
                unit.class = MotionClass::Rotation;
                JointKind::Revolute
            }
            (Some(JointKind::Helical), _) => {
                let w = &unit.twist.omega;
                unit.class = MotionClass::Helical(w.dot(&unit.twist.v) / w.norm_squared());
                JointKind::Helical
            }
        };
        Ok(ResolvedJoint { unit, qbar, kind })
    }

    /// `e^(xi (q + dq))`, evaluated as `exp(xibar, qbar (q + dq))`.
    pub fn exp(&self, q: T) -> Result<Transform<T>> {
        let r = self.resolve(lit(DEFAULT_EPS))?;
        Ok(twist_exp(&r.unit, r.qbar * (q + self.offset)))
    }
}

/// Product-of-exponentials robot model.
#[derive(Debug, Clone, PartialEq)]
pub struct PoeModel<T: Real> {
    pub convention: Convention,
    pub joints: Vec<JointSpec<T>>,
    /// Base-to-tool twist at the initial configuration (Base and Tool conventions).
    pub tool_twist: Option<Twist<T>>,
    /// `H_1 ... H_(n+1)` (Local convention only).
    pub local_frames: Vec<Transform<T>>,
}

impl<T: Real> PoeModel<T> {
    pub fn base(joints: Vec<JointSpec<T>>, tool_twist: Twist<T>) -> Self {
        Self {
            convention: Convention::Base,
            joints,
            tool_twist: Some(tool_twist),
            local_frames: Vec::new(),
        }
    }

    pub fn tool(joints: Vec<JointSpec<T>>, tool_twist: Twist<T>) -> Self {
        Self {
            convention: Convention::Tool,
            ..Self::base(joints, tool_twist)
        }
    }

    pub fn local(joints: Vec<JointSpec<T>>, local_frames: Vec<Transform<T>>) -> Self {
        Self {
            convention: Convention::Local,
            joints,
            tool_twist: None,
            local_frames,
        }
    }

    pub fn dof(&self) -> usize {
        self.joints.len()
    }

    /// Checks the structural invariants of the convention and the joint twists.
    pub fn validate(&self) -> Result<()> {
        match self.convention {
            Convention::Local => {
                let expected = self.joints.len() + 1;
                if self.local_frames.len() != expected {
                    return Err(KinematicsError::FrameCountMismatch {
                        joints: self.joints.len(),
                        expected,
                        found: self.local_frames.len(),
                    });
                }
            }
            c => {
                if self.tool_twist.is_none() {
                    return Err(KinematicsError::MissingToolTwist { convention: c });
                }
            }
        }
        for (i, j) in self.joints.iter().enumerate() {
            classify(&j.twist, lit(DEFAULT_EPS)).map_err(|e| e.at_joint(i + 1))?;
        }
        Ok(())
    }

    fn tool_transform(&self) -> Result<Transform<T>> {
        self.tool_twist
            .map(|t| t.exp())
            .ok_or(KinematicsError::MissingToolTwist {
                convention: self.convention,
            })
    }

    /// Forward kinematics evaluated in the model's own convention.
    pub fn fk(&self, q: &[T]) -> Result<Transform<T>> {
        check_arity(self.dof(), q.len())?;
        self.validate()?;
        let exps = self
            .joints
            .iter()
            .zip(q)
            .enumerate()
            .map(|(i, (j, &qi))| j.exp(qi).map_err(|e| e.at_joint(i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let out = match self.convention {
            Convention::Base => {
                exps.iter().fold(Transform::identity(), |acc, e| acc * *e)
                    * self.tool_transform()?
            }
            Convention::Tool => exps.iter().fold(self.tool_transform()?, |acc, e| acc * *e),
            Convention::Local => {
                let mut acc = Transform::identity();
                for (frame, e) in self.local_frames.iter().zip(&exps) {
                    acc = acc * *frame * *e;
                }
                acc * self.local_frames[self.dof()]
            }
        };
        Ok(out)
    }
}

fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(KinematicsError::ArityMismatch { expected, found });
    }
    Ok(())
}

fn require_convention<T: Real>(model: &PoeModel<T>, expected: Convention) -> Result<()> {
    if model.convention != expected {
        return Err(KinematicsError::ConventionMismatch {
            expected,
            found: model.convention,
        });
    }
    Ok(())
}

/// Base-convention POE forward kinematics.
pub fn poe_fk<T: Real>(model: &PoeModel<T>, q: &[T]) -> Result<Transform<T>> {
    require_convention(model, Convention::Base)?;
    model.fk(q)
}

/// Re-expresses tool-frame twists in the base frame: `xi_i = Ad(e^(xi_T)) xi_i^T`.
pub fn tool_to_base<T: Real>(model: &PoeModel<T>) -> Result<PoeModel<T>> {
    require_convention(model, Convention::Tool)?;
    model.validate()?;
    let tool = model.tool_transform()?;
    let joints = model
        .joints
        .iter()
        .map(|j| JointSpec {
            twist: j.twist.transformed_by(&tool),
            ..*j
        })
        .collect();
    Ok(PoeModel::base(
        joints,
        model.tool_twist.unwrap_or_else(Twist::zero),
    ))
}

/// Folds local frames into base twists: `xi_i = Ad(H_1 ... H_i) xi_i^H`.
pub fn local_to_base<T: Real>(model: &PoeModel<T>) -> Result<PoeModel<T>> {
    require_convention(model, Convention::Local)?;
    model.validate()?;
    let mut acc = Transform::identity();
    let mut joints = Vec::with_capacity(model.dof());
    for (j, frame) in model.joints.iter().zip(&model.local_frames) {
        acc = acc * *frame;
        joints.push(JointSpec {
            twist: j.twist.transformed_by(&acc),
            ..*j
        });
    }
    acc = acc * model.local_frames[model.dof()];
    Ok(PoeModel::base(joints, twist_log(&acc)))
}

/// Any convention reduced to the base POE formula.
pub fn reduce_to_base<T: Real>(model: &PoeModel<T>) -> Result<PoeModel<T>> {
    match model.convention {
        Convention::Base => {
            model.validate()?;
            Ok(model.clone())
        }
        Convention::Tool => tool_to_base(model),
        Convention::Local => local_to_base(model),
    }
}

/// `Rz(j q) Tz(k q)`.
pub fn q_screw<T: Real>(j: T, k: T, q: T) -> Transform<T> {
    Transform::rot_z(j * q) * Transform::trans_z(k * q)
}

/// Four-parameter D-H frame `Rz(theta) Tz(d) Rx(alpha) Tx(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DhFrame<T: Real> {
    pub theta: T,
    pub d: T,
    pub alpha: T,
    pub a: T,
}

impl<T: Real> DhFrame<T> {
    pub fn new(theta: T, d: T, alpha: T, a: T) -> Self {
        Self { theta, d, alpha, a }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn transform(&self) -> Transform<T> {
        Transform::rot_z(self.theta)
            * Transform::trans_z(self.d)
            * Transform::rot_x(self.alpha)
            * Transform::trans_x(self.a)
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.theta, self.d, self.alpha, self.a]
    }
}

/// Joint row: the screw `Q(qbar q)` followed by the frame `^(i-1)H_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhRow<T: Real> {
    pub frame: DhFrame<T>,
    pub kind: JointKind,
    /// Helical pitch in mm/rad; ignored for revolute and prismatic rows.
    pub pitch: T,
    /// Normalization factor multiplying the joint variable.
    pub scale: T,
    /// A nonzero POE joint offset was folded into `theta` / `d`.
    pub offset_merged: bool,
}

impl<T: Real> DhRow<T> {
    pub fn new(frame: DhFrame<T>, kind: JointKind) -> Self {
        Self {
            frame,
            kind,
            pitch: T::zero(),
            scale: T::one(),
            offset_merged: false,
        }
    }

    pub fn j(&self) -> T {
        match self.kind {
            JointKind::Prismatic => T::zero(),
            _ => T::one(),
        }
    }

    pub fn k(&self) -> T {
        match self.kind {
            JointKind::Revolute => T::zero(),
            JointKind::Prismatic => T::one(),
            JointKind::Helical => self.pitch,
        }
    }

    pub fn screw(&self, q: T) -> Transform<T> {
        q_screw(self.j(), self.k(), self.scale * q)
    }
}

/// Two-parameter tool row `Rz(theta) Tz(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DhTool<T: Real> {
    pub theta: T,
    pub d: T,
}

impl<T: Real> DhTool<T> {
    pub fn transform(&self) -> Transform<T> {
        Transform::rot_z(self.theta) * Transform::trans_z(self.d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DhModel<T: Real> {
    pub base: DhFrame<T>,
    pub rows: Vec<DhRow<T>>,
    pub tool: DhTool<T>,
}

impl<T: Real> DhModel<T> {
    pub fn dof(&self) -> usize {
        self.rows.len()
    }

    /// Transform of all static rows, i.e. FK at `q = 0`.
    pub fn static_chain(&self) -> Transform<T> {
        self.rows
            .iter()
            .fold(self.base.transform(), |acc, r| acc * r.frame.transform())
            * self.tool.transform()
    }

    /// Wraps every angle into `(-pi, pi]`.
    pub fn wrapped(mut self) -> Self {
        let wrap = |f: &mut DhFrame<T>| {
            f.theta = wrap_angle(f.theta);
            f.alpha = wrap_angle(f.alpha);
        };
        wrap(&mut self.base);
        self.rows.iter_mut().for_each(|r| wrap(&mut r.frame));
        self.tool.theta = wrap_angle(self.tool.theta);
        self
    }
}

/// D-H forward kinematics `^B H_0 Q(q_1) ^0 H_1 ... Q(q_n) ^(n-1) H_n ^n H_T`.
pub fn dh_fk<T: Real>(model: &DhModel<T>, q: &[T]) -> Result<Transform<T>> {
    check_arity(model.dof(), q.len())?;
    let chain = model
        .rows
        .iter()
        .zip(q)
        .fold(model.base.transform(), |acc, (row, &qi)| {
            acc * row.screw(qi) * row.frame.transform()
        });
    Ok(chain * model.tool.transform())
}

/// Base-convention POE model with the same forward kinematics as `model`.
///
/// Joint `i` becomes `Ad(^B H_0 ... ^(i-2) H_(i-1))` applied to the canonical
/// Z screw, scaled by the row's normalization factor.
pub fn dh_to_poe<T: Real>(model: &DhModel<T>) -> PoeModel<T> {
    let mut acc = model.base.transform();
    let mut joints = Vec::with_capacity(model.dof());
    for row in &model.rows {
        let (o, l) = (T::zero(), T::one());
        let canonical = match row.kind {
            JointKind::Prismatic => Twist::from_array([o, o, o, o, o, l]),
            _ => Twist::from_array([o, o, l, o, o, row.k()]),
        };
        joints.push(JointSpec {
            twist: canonical.transformed_by(&acc).scale(row.scale),
            offset: T::zero(),
            declared: Some(row.kind),
        });
        acc = acc * row.frame.transform();
    }
    acc = acc * model.tool.transform();
    PoeModel::base(joints, twist_log(&acc))
}
