//! Independent oracles and random-instance generators shared by the
//! integration suites. Nothing here calls the closed-form exponential,
//! the adjoint helpers or the conversion code under test.
#![allow(dead_code)]

use nalgebra::{Matrix3, Matrix4, Vector3};
use poe_dh::{DhFrame, DhModel, DhRow, DhTool, JointKind, JointSpec, PoeModel, Transform, Twist};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PUMA_NOMINAL: [[f64; 6]; 6] = [
    [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0, 0.0, -100.0],
    [0.0, 0.0, -1.0, -50.0, 250.0, 0.0],
    [0.0, -1.0, 0.0, -20.0, 0.0, -250.0],
    [0.0, 0.0, -1.0, -50.0, 250.0, 0.0],
];
pub const PUMA_NOMINAL_TOOL: [f64; 6] = [0.0, 0.0, 0.0, 250.0, 50.0, -20.0];

pub const PUMA_ACTUAL: [[f64; 6]; 6] = [
    [0.04, -0.02, 0.999, 0.02, 0.04, 0.0],
    [0.0, -1.00002, 0.0, -0.02, 0.0, 0.05],
    [0.178, -0.984, -0.001, -0.07, 0.009, -101.0],
    [0.062, 0.013, -0.998, -51.0, 249.0, 0.0752],
    [0.001, -1.00004, 0.0, -20.6, -0.0206, -249.0],
    [0.095, 0.031, -0.995, -51.0, 249.0, 0.0],
];
pub const PUMA_ACTUAL_TOOL: [f64; 6] = [0.02, -0.01, 0.01, 249.0, 51.0, -20.6];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn base_model(twists: &[[f64; 6]], tool: [f64; 6]) -> PoeModel<f64> {
    PoeModel::base(
        twists
            .iter()
            .map(|t| JointSpec::new(Twist::from_array(*t)))
            .collect(),
        Twist::from_array(tool),
    )
}

/// se(3) matrix written out by hand.
pub fn hat4(xi: &[f64; 6]) -> Matrix4<f64> {
    let [w1, w2, w3, v1, v2, v3] = *xi;
    Matrix4::new(
        0.0, -w3, w2, v1, //
        w3, 0.0, -w1, v2, //
        -w2, w1, 0.0, v3, //
        0.0, 0.0, 0.0, 0.0,
    )
}

/// Matrix exponential by scaling and squaring with a Taylor series.
///
/// Inputs have a zero bottom row, so the series converges at a rate set by
/// the upper-left 3x3 block alone; the squaring depth is chosen from it.
pub fn expm(a: &Matrix4<f64>) -> Matrix4<f64> {
    assert!(
        a.row(3).iter().all(|&x| x == 0.0),
        "expm oracle expects a zero bottom row"
    );
    let norm = a.fixed_view::<3, 3>(0, 0).abs().row_sum().max();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a * scale;
    let mut term = Matrix4::identity();
    let mut sum = Matrix4::identity();
    for k in 1..30 {
        term = term * x / k as f64;
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `exp(hat(xi) * q)` via the generic matrix exponential.
pub fn oracle_exp(xi: &[f64; 6], q: f64) -> Transform<f64> {
    Transform::from_homogeneous(&expm(&(hat4(xi) * q)))
}

pub fn mat4(h: &Transform<f64>) -> Matrix4<f64> {
    h.to_homogeneous()
}

/// Elementary transforms assembled entry by entry.
pub fn oracle_rz(t: f64) -> Matrix4<f64> {
    let (s, c) = t.sin_cos();
    Matrix4::new(c, -s, 0., 0., s, c, 0., 0., 0., 0., 1., 0., 0., 0., 0., 1.)
}

pub fn oracle_rx(t: f64) -> Matrix4<f64> {
    let (s, c) = t.sin_cos();
    Matrix4::new(1., 0., 0., 0., 0., c, -s, 0., 0., s, c, 0., 0., 0., 0., 1.)
}

pub fn oracle_tz(d: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m[(2, 3)] = d;
    m
}

pub fn oracle_tx(a: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m[(0, 3)] = a;
    m
}

pub fn oracle_dh(theta: f64, d: f64, alpha: f64, a: f64) -> Matrix4<f64> {
    oracle_rz(theta) * oracle_tz(d) * oracle_rx(alpha) * oracle_tx(a)
}

/// Base-convention POE forward kinematics accumulated joint by joint with
/// the matrix-exponential oracle on the raw twists.
pub fn oracle_poe_fk(
    twists: &[[f64; 6]],
    offsets: &[f64],
    tool: &[f64; 6],
    q: &[f64],
) -> Matrix4<f64> {
    let mut acc = Matrix4::<f64>::identity();
    for ((xi, dq), qi) in twists.iter().zip(offsets).zip(q) {
        acc *= expm(&(hat4(xi) * (qi + dq)));
    }
    acc * expm(&hat4(tool))
}

pub fn max_diff(a: &Matrix4<f64>, b: &Matrix4<f64>) -> f64 {
    (a - b).amax()
}

pub fn unit_vec(rng: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn vec_in(rng: &mut impl Rng, r: f64) -> Vector3<f64> {
    Vector3::new(
        rng.random_range(-r..r),
        rng.random_range(-r..r),
        rng.random_range(-r..r),
    )
}

fn arr(w: Vector3<f64>, v: Vector3<f64>) -> [f64; 6] {
    [w.x, w.y, w.z, v.x, v.y, v.z]
}

/// Unit-omega twist through a random point with the given pitch.
pub fn rotational_twist(rng: &mut impl Rng, pitch: f64) -> [f64; 6] {
    let w = unit_vec(rng);
    let p = vec_in(rng, 500.0);
    arr(w, p.cross(&w) + w * pitch)
}

pub fn helical_twist(rng: &mut impl Rng) -> [f64; 6] {
    let pitch = rng.random_range(-20.0..20.0);
    rotational_twist(rng, pitch)
}

pub fn translational_twist(rng: &mut impl Rng) -> [f64; 6] {
    arr(Vector3::zeros(), unit_vec(rng))
}

/// Twist of any class, unnormalized.
pub fn any_twist(rng: &mut impl Rng) -> [f64; 6] {
    let scale = rng.random_range(0.5..2.0);
    let mut t = match rng.random_range(0..3) {
        0 => rotational_twist(rng, 0.0),
        1 => helical_twist(rng),
        _ => translational_twist(rng),
    };
    t.iter_mut().for_each(|x| *x *= scale);
    t
}

pub fn random_transform(rng: &mut impl Rng) -> Transform<f64> {
    let w = unit_vec(rng) * rng.random_range(-3.1..3.1);
    oracle_exp(&arr(w, vec_in(rng, 300.0)), 1.0)
}

pub fn random_q(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}

pub fn random_dh(rng: &mut impl Rng, n: usize) -> DhModel<f64> {
    let frame = |rng: &mut ChaCha8Rng| {
        DhFrame::new(
            rng.random_range(-3.1..3.1),
            rng.random_range(-300.0..300.0),
            rng.random_range(-3.1..3.1),
            rng.random_range(0.0..300.0),
        )
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.random());
    let rows = (0..n)
        .map(|_| {
            let kind = match local.random_range(0..3) {
                0 => JointKind::Revolute,
                1 => JointKind::Prismatic,
                _ => JointKind::Helical,
            };
            let mut row = DhRow::new(frame(&mut local), kind);
            row.scale = local.random_range(0.5..1.5);
            if kind == JointKind::Helical {
                row.pitch = local.random_range(-10.0..10.0);
            }
            row
        })
        .collect();
    DhModel {
        base: frame(&mut local),
        rows,
        tool: DhTool {
            theta: local.random_range(-3.1..3.1),
            d: local.random_range(-300.0..300.0),
        },
    }
}

pub fn rotation_oracle_z(angle: f64) -> Matrix3<f64> {
    oracle_rz(angle).fixed_view::<3, 3>(0, 0).into_owned()
}
