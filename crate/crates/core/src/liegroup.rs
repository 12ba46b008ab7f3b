//! SE(3) / se(3) machinery: twists, their classification and normalization,
//! the closed-form exponential map, the adjoint, elementary screws and the
//! ZYX Euler decomposition.
//!
//! Units are radians and millimetres throughout. A twist is stored in
//! `(omega, v)` order; the pitch of a helical motion is the translation per
//! radian of rotation (mm/rad).

use std::ops::Mul;

use nalgebra::{Matrix3, Matrix4, Matrix6, Vector3, Vector6};

use crate::error::{KinematicsError, Result};
use crate::scalar::{atan2_or_zero, lit, to_f64, wrap_angle, Real};

/// Threshold below which a twist component is treated as zero.
pub const DEFAULT_EPS: f64 = 1e-8;

/// Tolerance on the norm of an axis direction.
pub const UNIT_TOL: f64 = 1e-12;

/// `|cos(ry)|` below this marks a ZYX gimbal lock.
pub const GIMBAL_TOL: f64 = 1e-9;

/// Skew-symmetric matrix with `skew(v) * w == v.cross(w)`.
pub fn skew<T: Real>(v: &Vector3<T>) -> Matrix3<T> {
    let z = T::zero();
    Matrix3::new(z, -v.z, v.y, v.z, z, -v.x, -v.y, v.x, z)
}

/// Rigid-body transform stored as rotation matrix plus translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform<T: Real> {
    pub rotation: Matrix3<T>,
    pub translation: Vector3<T>,
}

impl<T: Real> Transform<T> {
    pub fn new(rotation: Matrix3<T>, translation: Vector3<T>) -> Self {
        Self {
            rotation,
            translation,
        }
    }

    pub fn identity() -> Self {
        Self::new(Matrix3::identity(), Vector3::zeros())
    }

    pub fn from_translation(translation: Vector3<T>) -> Self {
        Self::new(Matrix3::identity(), translation)
    }

    pub fn from_rotation(rotation: Matrix3<T>) -> Self {
        Self::new(rotation, Vector3::zeros())
    }

    pub fn rot_x(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let (o, l) = (T::zero(), T::one());
        Self::from_rotation(Matrix3::new(l, o, o, o, c, -s, o, s, c))
    }

    pub fn rot_y(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let (o, l) = (T::zero(), T::one());
        Self::from_rotation(Matrix3::new(c, o, s, o, l, o, -s, o, c))
    }

    pub fn rot_z(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let (o, l) = (T::zero(), T::one());
        Self::from_rotation(Matrix3::new(c, -s, o, s, c, o, o, o, l))
    }

    pub fn trans_x(dist: T) -> Self {
        Self::from_translation(Vector3::new(dist, T::zero(), T::zero()))
    }

    pub fn trans_y(dist: T) -> Self {
        Self::from_translation(Vector3::new(T::zero(), dist, T::zero()))
    }

    pub fn trans_z(dist: T) -> Self {
        Self::from_translation(Vector3::new(T::zero(), T::zero(), dist))
    }

    pub fn inverse(&self) -> Self {
        let rt = self.rotation.transpose();
        Self::new(rt, -(rt * self.translation))
    }

    pub fn transform_point(&self, p: &Vector3<T>) -> Vector3<T> {
        self.rotation * p + self.translation
    }

    pub fn to_homogeneous(&self) -> Matrix4<T> {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.rotation);
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&self.translation);
        m
    }

    /// Takes the upper 3x4 block; the bottom row is not checked.
    pub fn from_homogeneous(m: &Matrix4<T>) -> Self {
        Self::new(
            m.fixed_view::<3, 3>(0, 0).into_owned(),
            m.fixed_view::<3, 1>(0, 3).into_owned(),
        )
    }

    /// Largest absolute entry-wise difference of the 3x4 blocks.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let r = (self.rotation - other.rotation).amax();
        let t = (self.translation - other.translation).amax();
        r.max(t)
    }

    /// Worst deviation of the rotation block from orthonormality with det +1.
    pub fn orthonormality_error(&self) -> T {
        let gram = (self.rotation.transpose() * self.rotation - Matrix3::identity()).amax();
        gram.max((self.rotation.determinant() - T::one()).abs())
    }

    pub fn adjoint(&self) -> Matrix6<T> {
        adjoint(self)
    }

    pub fn cast<U: Real>(&self) -> Transform<U> {
        Transform::new(
            self.rotation.map(|x| lit(to_f64(x))),
            self.translation.map(|x| lit(to_f64(x))),
        )
    }
}

impl<T: Real> Default for Transform<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Real> Mul for Transform<T> {
    type Output = Transform<T>;

    fn mul(self, rhs: Self) -> Self {
        Transform::new(
            self.rotation * rhs.rotation,
            self.rotation * rhs.translation + self.translation,
        )
    }
}

impl<'a, T: Real> Mul<&'a Transform<T>> for &'a Transform<T> {
    type Output = Transform<T>;

    fn mul(self, rhs: &'a Transform<T>) -> Transform<T> {
        *self * *rhs
    }
}

/// Twist coordinates `(omega, v)`; not necessarily normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist<T: Real> {
    pub omega: Vector3<T>,
    pub v: Vector3<T>,
}

impl<T: Real> Twist<T> {
    pub fn new(omega: Vector3<T>, v: Vector3<T>) -> Self {
        Self { omega, v }
    }

    pub fn zero() -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros())
    }

    pub fn from_array(a: [T; 6]) -> Self {
        Self::new(
            Vector3::new(a[0], a[1], a[2]),
            Vector3::new(a[3], a[4], a[5]),
        )
    }

    pub fn to_array(&self) -> [T; 6] {
        [
            self.omega.x,
            self.omega.y,
            self.omega.z,
            self.v.x,
            self.v.y,
            self.v.z,
        ]
    }

    pub fn from_vector6(x: &Vector6<T>) -> Self {
        Self::new(
            Vector3::new(x[0], x[1], x[2]),
            Vector3::new(x[3], x[4], x[5]),
        )
    }

    pub fn to_vector6(&self) -> Vector6<T> {
        Vector6::from_column_slice(&self.to_array())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.omega * s, self.v * s)
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| to_f64(*x).is_finite())
    }

    /// The 4x4 matrix form in se(3).
    pub fn hat(&self) -> Matrix4<T> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&skew(&self.omega));
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&self.v);
        m
    }

    /// `Ad(h) * self`, evaluated without forming the 6x6 matrix.
    pub fn transformed_by(&self, h: &Transform<T>) -> Self {
        let omega = h.rotation * self.omega;
        let v = h.translation.cross(&omega) + h.rotation * self.v;
        Self::new(omega, v)
    }

    /// `exp(hat(self))` for the twist as given (unit magnitude multiplier).
    pub fn exp(&self) -> Transform<T> {
        let theta = self.omega.norm();
        if theta == T::zero() {
            return Transform::from_translation(self.v);
        }
        let inv = T::one() / theta;
        screw_exp(&(self.omega * inv), &(self.v * inv), theta)
    }
}

/// `exp` of a twist with unit `omega`, linear part `v`, scaled by `q`.
fn screw_exp<T: Real>(omega: &Vector3<T>, v: &Vector3<T>, q: T) -> Transform<T> {
    let w = skew(omega);
    let w2 = w * w;
    let s = q.sin();
    let half_s = (q * lit(0.5)).sin();
    let one_c = half_s * half_s * lit(2.0);
    let q_s = if q.abs() < lit(1e-3) {
        let q3 = q * q * q;
        q3 / lit(6.0) - q3 * q * q / lit(120.0)
    } else {
        q - s
    };
    let rotation = Matrix3::identity() + w * s + w2 * one_c;
    let g = Matrix3::identity() * q + w * one_c + w2 * q_s;
    Transform::new(rotation, g * v)
}

/// Kind of screw motion a twist generates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MotionClass<T: Real> {
    Rotation,
    Translation,
    /// Carries the pitch in mm/rad.
    Helical(T),
}

impl<T: Real> MotionClass<T> {
    /// Pitch in mm/rad; `None` for a pure translation.
    pub fn pitch(&self) -> Option<T> {
        match self {
            MotionClass::Rotation => Some(T::zero()),
            MotionClass::Translation => None,
            MotionClass::Helical(h) => Some(*h),
        }
    }

    pub fn is_rotational(&self) -> bool {
        !matches!(self, MotionClass::Translation)
    }
}

/// Classifies a twist as rotation, translation or helical motion.
pub fn classify<T: Real>(xi: &Twist<T>, eps: T) -> Result<MotionClass<T>> {
    let wn = xi.omega.norm();
    if wn < eps {
        if xi.v.norm() < eps {
            return Err(KinematicsError::ZeroTwist { eps: to_f64(eps) });
        }
        return Ok(MotionClass::Translation);
    }
    let h = xi.omega.dot(&xi.v) / (wn * wn);
    if h.abs() < eps {
        Ok(MotionClass::Rotation)
    } else {
        Ok(MotionClass::Helical(h))
    }
}

/// A twist scaled to unit angular part, or unit linear part for translations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedTwist<T: Real> {
    pub twist: Twist<T>,
    pub class: MotionClass<T>,
}

impl<T: Real> NormalizedTwist<T> {
    /// Wraps an already-unit twist, classifying it with `eps`.
    pub fn from_unit(twist: Twist<T>, eps: T) -> Result<Self> {
        let class = classify(&twist, eps)?;
        let norm = if class.is_rotational() {
            twist.omega.norm()
        } else {
            twist.v.norm()
        };
        if (norm - T::one()).abs() > lit(UNIT_TOL) {
            return Err(KinematicsError::NonUnitDirection { norm: to_f64(norm) });
        }
        Ok(Self { twist, class })
    }

    pub fn pitch(&self) -> Option<T> {
        self.class.pitch()
    }

    /// The twist re-expressed through `Ad(h)`; normalization and pitch are preserved.
    pub fn transformed_by(&self, h: &Transform<T>) -> Self {
        Self {
            twist: self.twist.transformed_by(h),
            class: self.class,
        }
    }
}

/// Normalizes with the default classification threshold.
pub fn normalize<T: Real>(xi: &Twist<T>) -> Result<(NormalizedTwist<T>, T)> {
    normalize_with(xi, lit(DEFAULT_EPS))
}

/// Splits `xi` into a normalized twist and its normalization factor `qbar > 0`.
pub fn normalize_with<T: Real>(xi: &Twist<T>, eps: T) -> Result<(NormalizedTwist<T>, T)> {
    let class = classify(xi, eps)?;
    let qbar = match class {
        MotionClass::Translation => xi.v.norm(),
        _ => xi.omega.norm(),
    };
    let twist = xi.scale(T::one() / qbar);
    Ok((NormalizedTwist { twist, class }, qbar))
}

/// Builds the normalized twist of a screw axis through `point` along `direction`.
pub fn twist_from_axis<T: Real>(
    direction: &Vector3<T>,
    point: &Vector3<T>,
    pitch: T,
) -> Result<NormalizedTwist<T>> {
    let norm = direction.norm();
    if (norm - T::one()).abs() > lit(UNIT_TOL) {
        return Err(KinematicsError::NonUnitDirection { norm: to_f64(norm) });
    }
    let v = point.cross(direction) + direction * pitch;
    let class = if pitch == T::zero() {
        MotionClass::Rotation
    } else {
        MotionClass::Helical(pitch)
    };
    Ok(NormalizedTwist {
        twist: Twist::new(*direction, v),
        class,
    })
}

/// Closed-form `exp(hat(xi) * q)` for a normalized twist.
///
/// For rotational and helical twists `q` is the rotation angle; for
/// translations it is the travelled distance.
pub fn twist_exp<T: Real>(xin: &NormalizedTwist<T>, q: T) -> Transform<T> {
    let xi = &xin.twist;
    match xin.class {
        MotionClass::Translation => Transform::from_translation(xi.v * q),
        MotionClass::Rotation | MotionClass::Helical(_) => screw_exp(&xi.omega, &xi.v, q),
    }
}

/// Twist `xi` with `exp(hat(xi)) == h`, taking the rotation angle in `[0, pi]`.
pub fn twist_log<T: Real>(h: &Transform<T>) -> Twist<T> {
    let r = &h.rotation;
    let t = h.translation;
    let half = lit::<T>(0.5);
    let cos_th = ((r.trace() - T::one()) * half).clamp(-T::one(), T::one());
    let axial = Vector3::new(
        r[(2, 1)] - r[(1, 2)],
        r[(0, 2)] - r[(2, 0)],
        r[(1, 0)] - r[(0, 1)],
    ) * half;
    let sin_th = axial.norm();
    let theta = sin_th.atan2(cos_th);
    if theta == T::zero() {
        return Twist::new(Vector3::zeros(), t);
    }
    let axis = if cos_th < lit(-0.5) {
        // Near pi the antisymmetric part vanishes; read the axis off the symmetric part.
        let b = (r + r.transpose()) * half - Matrix3::identity() * cos_th;
        let mut k = 0;
        for i in 1..3 {
            if b[(i, i)] > b[(k, k)] {
                k = i;
            }
        }
        let mut a = b.column(k).into_owned();
        a /= a.norm();
        if a.dot(&axial) < T::zero() {
            a = -a;
        }
        a
    } else {
        axial / sin_th
    };
    let omega = axis * theta;
    // v = (I - w^/2 + c/theta^2 w^2) t, c = 1 - (theta/2) cot(theta/2)
    let c_over = if theta < lit(1e-4) {
        let th2 = theta * theta;
        lit::<T>(1.0 / 12.0) + th2 / lit(720.0)
    } else {
        let ht = theta * half;
        (T::one() - ht * ht.cos() / ht.sin()) / (theta * theta)
    };
    let wt = omega.cross(&t);
    let v = t - wt * half + omega.cross(&wt) * c_over;
    Twist::new(omega, v)
}

/// The 6x6 adjoint `[R, 0; hat(t) R, R]` acting on `(omega, v)` coordinates.
pub fn adjoint<T: Real>(h: &Transform<T>) -> Matrix6<T> {
    let r = h.rotation;
    let mut m = Matrix6::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(&r);
    m.fixed_view_mut::<3, 3>(3, 0)
        .copy_from(&(skew(&h.translation) * r));
    m.fixed_view_mut::<3, 3>(3, 3).copy_from(&r);
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElemKind {
    Rotate,
    Translate,
}

/// Elementary screw: rotation about, or translation along, a coordinate axis.
pub fn elem<T: Real>(axis: Axis, kind: ElemKind, value: T) -> Transform<T> {
    match (axis, kind) {
        (Axis::X, ElemKind::Rotate) => Transform::rot_x(value),
        (Axis::Y, ElemKind::Rotate) => Transform::rot_y(value),
        (Axis::Z, ElemKind::Rotate) => Transform::rot_z(value),
        (Axis::X, ElemKind::Translate) => Transform::trans_x(value),
        (Axis::Y, ElemKind::Translate) => Transform::trans_y(value),
        (Axis::Z, ElemKind::Translate) => Transform::trans_z(value),
    }
}

/// ZYX Euler angles with `R = Rz(rz) Ry(ry) Rx(rx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerZyx<T: Real> {
    pub rz: T,
    pub ry: T,
    pub rx: T,
    /// `|cos(ry)|` fell below [`GIMBAL_TOL`]; `rx` was pinned to zero.
    pub gimbal_lock: bool,
}

impl<T: Real> EulerZyx<T> {
    pub fn to_vector(&self) -> Vector3<T> {
        Vector3::new(self.rz, self.ry, self.rx)
    }

    pub fn norm(&self) -> T {
        self.to_vector().norm()
    }

    pub fn to_rotation(&self) -> Matrix3<T> {
        Transform::rot_z(self.rz).rotation
            * Transform::rot_y(self.ry).rotation
            * Transform::rot_x(self.rx).rotation
    }
}

pub fn euler_zyx<T: Real>(r: &Matrix3<T>) -> EulerZyx<T> {
    let cy = r[(0, 0)].hypot(r[(1, 0)]);
    let ry = (-r[(2, 0)]).atan2(cy);
    if cy < lit(GIMBAL_TOL) {
        let rz = wrap_angle(atan2_or_zero(-r[(0, 1)], r[(1, 1)]));
        return EulerZyx {
            rz,
            ry,
            rx: T::zero(),
            gimbal_lock: true,
        };
    }
    EulerZyx {
        rz: wrap_angle(atan2_or_zero(r[(1, 0)], r[(0, 0)])),
        ry,
        rx: wrap_angle(atan2_or_zero(r[(2, 1)], r[(2, 2)])),
        gimbal_lock: false,
    }
}
