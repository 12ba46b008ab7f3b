//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the kinematics core: `f32` or `f64`.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + fmt::Display {}

impl<T> Real for T where T: RealField + Copy + FromPrimitive + ToPrimitive + fmt::Display {}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in target scalar")
}

/// Lossy conversion back to `f64` for reporting.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `atan2` with the degenerate origin mapped to zero, including signed zeros.
#[inline]
pub fn atan2_or_zero<T: Real>(y: T, x: T) -> T {
    if y == T::zero() && x == T::zero() {
        T::zero()
    } else {
        y.atan2(x)
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle<T: Real>(angle: T) -> T {
    let pi = T::pi();
    let two_pi = T::two_pi();
    let mut a = angle % two_pi;
    if a > pi {
        a -= two_pi;
    } else if a <= -pi {
        a += two_pi;
    }
    a
}

/// Signed difference `a - b` reduced into `(-pi, pi]`.
pub fn angle_diff<T: Real>(a: T, b: T) -> T {
    wrap_angle(a - b)
}
