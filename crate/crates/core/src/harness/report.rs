use std::fmt::Write;

use crate::kinematics::{DhModel, JointKind};
use crate::liegroup::Transform;

/// Table of D-H parameters: angles in degrees, lengths in mm, pitch in mm/deg.
pub fn format_dh_report(dh: &DhModel<f64>) -> String {
    let n = dh.dof();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:>12} {:>12} {:>12} {:>12} {:>10} {:>14} {:>12}",
        "frame", "theta(deg)", "d(mm)", "alpha(deg)", "a(mm)", "joint", "h(mm/deg)", "qbar"
    );
    let label = |from: String, to: String| format!("{from}H{to}");
    let b = &dh.base;
    let _ = writeln!(
        out,
        "{:<8} {:>12.4} {:>12.4} {:>12.4} {:>12.4}",
        label("B".into(), "0".into()),
        b.theta.to_degrees(),
        b.d,
        b.alpha.to_degrees(),
        b.a
    );
    for (i, row) in dh.rows.iter().enumerate() {
        let f = &row.frame;
        let pitch = match row.kind {
            JointKind::Helical => {
                let h = row.pitch.to_radians();
                if h != 0.0 && h.abs() < 1e-4 {
                    format!("{h:.2e}")
                } else {
                    format!("{h:.7}")
                }
            }
            JointKind::Revolute => "0".to_string(),
            JointKind::Prismatic => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "{:<8} {:>12.4} {:>12.4} {:>12.4} {:>12.4} {:>10} {:>14} {:>12.7}{}",
            label(i.to_string(), (i + 1).to_string()),
            f.theta.to_degrees(),
            f.d,
            f.alpha.to_degrees(),
            f.a,
            row.kind.name(),
            pitch,
            row.scale,
            if row.offset_merged {
                "  (offset merged)"
            } else {
                ""
            }
        );
    }
    let _ = writeln!(
        out,
        "{:<8} {:>12.4} {:>12.4}",
        label(n.to_string(), "T".into()),
        dh.tool.theta.to_degrees(),
        dh.tool.d
    );
    out
}

/// Homogeneous 4x4 matrix, one row per line.
pub fn format_transform(h: &Transform<f64>) -> String {
    let m = h.to_homogeneous();
    let mut out = String::new();
    for r in 0..4 {
        let row: Vec<String> = (0..4).map(|c| format!("{:>16.9}", m[(r, c)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
