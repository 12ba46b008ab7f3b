//! Analytic conversion of a product-of-exponentials model into D-H form.
//!
//! Every joint exponential is factored as `H Q(q) H^-1` with
//! `H = Rz(theta) Tz(d) Rx(alpha) Tx(a)`. Walking the chain from the base,
//! each twist is first pulled back through the frames already emitted, so
//! the chain telescopes into `^B H_0 Q(q_1) ^0 H_1 ... Q(q_n) e^(xi_T')`.
//! The leftover `e^(xi_T')` splits into a full D-H frame and a `Rz Tz` tool row.

use nalgebra::Vector3;

use crate::error::{KinematicsError, Result};
use crate::kinematics::{reduce_to_base, DhFrame, DhModel, DhRow, DhTool, JointKind, PoeModel};
use crate::liegroup::{MotionClass, NormalizedTwist, Transform, Twist, DEFAULT_EPS};
use crate::scalar::{atan2_or_zero, lit, to_f64, wrap_angle, Real};

/// `1 - |omega_3|` below this selects the parallel-axis branch.
pub const PARALLEL_TOL: f64 = 1e-9;

/// `|a sin(alpha)|` below this counts as zero when choosing the sign of alpha.
pub const POLARITY_TOL: f64 = 1e-12;

/// `sin(alpha)` below this makes the tool split degenerate.
pub const GIMBAL_TOL: f64 = 1e-9;

/// Planar offset below which a degenerate tool split ignores translation direction.
pub const PLANAR_TOL: f64 = 1e-11;

/// D-H factor of a single joint axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhFactor<T: Real> {
    pub theta: T,
    pub d: T,
    pub alpha: T,
    pub a: T,
    /// Helical pitch (mm/rad); zero for revolute and prismatic factors.
    pub pitch: T,
}

impl<T: Real> DhFactor<T> {
    pub fn frame(&self) -> DhFrame<T> {
        DhFrame::new(self.theta, self.d, self.alpha, self.a)
    }

    pub fn transform(&self) -> Transform<T> {
        self.frame().transform()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConversionOptions {
    /// Classification threshold for joints without a declared kind.
    pub eps: f64,
}

impl Default for ConversionOptions {
    fn default() -> Self {
        Self { eps: DEFAULT_EPS }
    }
}

fn require_rotational<T: Real>(xibar: &NormalizedTwist<T>) -> Result<()> {
    if !xibar.class.is_rotational() {
        return Err(KinematicsError::NotRotational {
            omega_norm: to_f64(xibar.twist.omega.norm()),
        });
    }
    Ok(())
}

/// Orients the local Z axis along a unit direction:
/// `dir = (sin(theta) sin(alpha), -cos(theta) sin(alpha), cos(alpha))`.
/// Returns `(theta, alpha, sin(alpha))`, or `None` for a direction along +/-Z.
fn orient_z<T: Real>(dir: &Vector3<T>, negative_alpha: bool) -> Option<(T, T, T)> {
    if T::one() - dir.z.abs() < lit(PARALLEL_TOL) {
        return None;
    }
    let planar = dir.x.hypot(dir.y);
    let mut alpha = planar.atan2(dir.z);
    let mut s_alpha = planar;
    if negative_alpha {
        alpha = -alpha;
        s_alpha = -s_alpha;
    }
    let theta = atan2_or_zero(dir.x / s_alpha, -dir.y / s_alpha);
    Some((theta, alpha, s_alpha))
}

/// Factors a rotational or helical joint as `H Rz(q) Tz(h q) H^-1`.
pub fn factor_helical<T: Real>(xibar: &NormalizedTwist<T>) -> Result<DhFactor<T>> {
    require_rotational(xibar)?;
    let w = xibar.twist.omega;
    let v = xibar.twist.v;
    let h = w.dot(&v);

    if T::one() - w.z.abs() < lit(PARALLEL_TOL) {
        // Parallel to Z: the common normal is not unique and d is pinned to zero.
        let s = w.z.signum();
        let alpha = if s > T::zero() { T::zero() } else { T::pi() };
        return Ok(DhFactor {
            theta: atan2_or_zero(v.x * s, -v.y * s),
            d: T::zero(),
            alpha,
            a: v.x.hypot(v.y),
            pitch: h,
        });
    }

    // a sin(alpha) = h w3 - v3; a >= 0 fixes the sign of alpha.
    let a_sin = h * w.z - v.z;
    let negative = a_sin < -lit::<T>(POLARITY_TOL);
    let (theta, alpha, s_alpha) = orient_z(&w, negative).expect("non-parallel axis");
    let planar2 = w.x * w.x + w.y * w.y;
    Ok(DhFactor {
        theta,
        d: (w.x * v.y - w.y * v.x) / planar2,
        alpha,
        a: a_sin / s_alpha,
        pitch: h,
    })
}

/// Factors a revolute joint as `H Rz(q) H^-1`; any residual pitch is dropped.
pub fn factor_revolute<T: Real>(xibar: &NormalizedTwist<T>) -> Result<DhFactor<T>> {
    let mut f = factor_helical(xibar)?;
    f.pitch = T::zero();
    Ok(f)
}

/// Factors a prismatic joint as `H Tz(q) H^-1`, with `d = a = 0`.
pub fn factor_prismatic<T: Real>(xibar: &NormalizedTwist<T>) -> Result<DhFactor<T>> {
    if xibar.class != MotionClass::Translation {
        return Err(KinematicsError::NotTranslational {
            omega_norm: to_f64(xibar.twist.omega.norm()),
        });
    }
    let dir = xibar.twist.v;
    let (theta, alpha) = match orient_z(&dir, false) {
        Some((theta, alpha, _)) => (theta, alpha),
        None if dir.z > T::zero() => (T::zero(), T::zero()),
        None => (T::zero(), T::pi()),
    };
    Ok(DhFactor {
        theta,
        d: T::zero(),
        alpha,
        a: T::zero(),
        pitch: T::zero(),
    })
}

/// `e^(xi_T) = H_1 H_2` with `H_1` a full D-H frame and `H_2 = Rz(theta) Tz(d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToolSplit<T: Real> {
    pub frame: DhFrame<T>,
    pub tool: DhTool<T>,
}

impl<T: Real> ToolSplit<T> {
    pub fn transform(&self) -> Transform<T> {
        self.frame.transform() * self.tool.transform()
    }
}

pub fn decompose_tool<T: Real>(xi_t: &Twist<T>) -> ToolSplit<T> {
    decompose_transform(&xi_t.exp())
}

/// Splits an arbitrary transform into `Rz Tz Rx Tx * Rz Tz`.
///
/// The rotation is a ZXZ factorization with `alpha` in `[0, pi]`; the
/// translations then follow linearly from `Rz(theta_1)^T t = (a, -sin(alpha) d_2, d_1 + cos(alpha) d_2)`.
pub fn decompose_transform<T: Real>(h: &Transform<T>) -> ToolSplit<T> {
    let r = &h.rotation;
    let t = &h.translation;
    let s_alpha = r[(0, 2)].hypot(r[(1, 2)]);

    if s_alpha < lit(GIMBAL_TOL) {
        let flipped = r[(2, 2)] < T::zero();
        let alpha = if flipped { T::pi() } else { T::zero() };
        // Rz(theta_1) Rx(alpha) Rz(theta_2) collapses to Rz(phi) Rx(alpha).
        let phi = atan2_or_zero(r[(1, 0)], r[(0, 0)]);
        let planar = t.x.hypot(t.y);
        let theta1 = if planar > lit(PLANAR_TOL) {
            t.y.atan2(t.x)
        } else {
            phi
        };
        let theta2 = if flipped { theta1 - phi } else { phi - theta1 };
        let (s1, c1) = theta1.sin_cos();
        return ToolSplit {
            frame: DhFrame::new(wrap_angle(theta1), t.z, alpha, c1 * t.x + s1 * t.y),
            tool: DhTool {
                theta: wrap_angle(theta2),
                d: T::zero(),
            },
        };
    }

    let alpha = s_alpha.atan2(r[(2, 2)]);
    let theta1 = r[(0, 2)].atan2(-r[(1, 2)]);
    let theta2 = r[(2, 0)].atan2(r[(2, 1)]);
    let (s1, c1) = theta1.sin_cos();
    let u = Vector3::new(c1 * t.x + s1 * t.y, -s1 * t.x + c1 * t.y, t.z);
    let d2 = -u.y / s_alpha;
    ToolSplit {
        frame: DhFrame::new(theta1, u.z - alpha.cos() * d2, alpha, u.x),
        tool: DhTool {
            theta: theta2,
            d: d2,
        },
    }
}

/// Converts any POE model into an equivalent D-H model.
pub fn poe_to_dh<T: Real>(model: &PoeModel<T>, opts: &ConversionOptions) -> Result<DhModel<T>> {
    let base = reduce_to_base(model)?;
    let eps: T = lit(opts.eps);
    let joints = base
        .joints
        .iter()
        .enumerate()
        .map(|(i, j)| j.resolve(eps).map_err(|e| e.at_joint(i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let tool = base
        .tool_twist
        .expect("validated base model carries a tool twist")
        .exp();

    // frames[i] is the factor of joint i, placed just before Q(q_i).
    let mut acc = Transform::identity();
    let mut frames = Vec::with_capacity(joints.len());
    for (i, joint) in joints.iter().enumerate() {
        let pulled = joint.unit.transformed_by(&acc.inverse());
        let factor = match joint.kind {
            JointKind::Revolute => factor_revolute(&pulled),
            JointKind::Helical => factor_helical(&pulled),
            JointKind::Prismatic => factor_prismatic(&pulled),
        }
        .map_err(|e| e.at_joint(i + 1))?;
        acc = acc * factor.transform();
        frames.push(factor.frame());
    }
    let split = decompose_transform(&(acc.inverse() * tool));

    if joints.is_empty() {
        return Ok(DhModel {
            base: split.frame,
            rows: Vec::new(),
            tool: split.tool,
        }
        .wrapped());
    }

    let rows = joints
        .iter()
        .zip(&base.joints)
        .enumerate()
        .map(|(i, (joint, spec))| {
            let mut row = DhRow::new(
                frames.get(i + 1).copied().unwrap_or(split.frame),
                joint.kind,
            );
            row.pitch = joint.pitch();
            row.scale = joint.qbar;
            if spec.offset != T::zero() {
                // Q(s (q + dq)) = Q(s dq) Q(s q), and Q(s dq) commutes into Rz(theta) Tz(d).
                let shift = joint.qbar * spec.offset;
                row.frame.theta += row.j() * shift;
                row.frame.d += row.k() * shift;
                row.offset_merged = true;
            }
            row
        })
        .collect();

    Ok(DhModel {
        base: frames[0],
        rows,
        tool: split.tool,
    }
    .wrapped())
}
