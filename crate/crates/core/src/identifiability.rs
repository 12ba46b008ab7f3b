//! Counting identifiable kinematic parameters from a joint-type census.

use std::fmt;

use crate::error::Result;
use crate::kinematics::{JointKind, PoeModel};
use crate::scalar::{lit, Real};

/// Joints by type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct JointCensus {
    pub helical: usize,
    pub revolute: usize,
    pub prismatic: usize,
}

impl JointCensus {
    pub fn new(helical: usize, revolute: usize, prismatic: usize) -> Self {
        Self {
            helical,
            revolute,
            prismatic,
        }
    }

    /// Total number of joints.
    pub fn n(&self) -> usize {
        self.helical + self.revolute + self.prismatic
    }

    fn add(&mut self, kind: JointKind) {
        match kind {
            JointKind::Helical => self.helical += 1,
            JointKind::Revolute => self.revolute += 1,
            JointKind::Prismatic => self.prismatic += 1,
        }
    }
}

impl FromIterator<JointKind> for JointCensus {
    fn from_iter<I: IntoIterator<Item = JointKind>>(iter: I) -> Self {
        let mut c = JointCensus::default();
        iter.into_iter().for_each(|k| c.add(k));
        c
    }
}

/// Counts joints by kind; declared kinds win over classification with `eps`.
pub fn census<T: Real>(model: &PoeModel<T>, eps: f64) -> Result<JointCensus> {
    let eps = lit::<T>(eps);
    model
        .joints
        .iter()
        .enumerate()
        .map(|(i, j)| {
            j.resolve(eps)
                .map(|r| r.kind)
                .map_err(|e| e.at_joint(i + 1))
        })
        .collect()
}

/// Terms of the comprehensive count `C3 = (5h + 4r + 2t) + n + 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct C3Breakdown {
    /// Normalized joint twists: 5 per helical, 4 per revolute, 2 per prismatic joint.
    pub joint_twists: usize,
    /// One normalization factor per joint.
    pub scale_factors: usize,
    /// Initial base-to-tool placement.
    pub tool: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentifiabilityReport {
    pub census: JointCensus,
    /// `6r + 3t + 6`
    pub c1: usize,
    /// `4r + 2t + 6`
    pub c2: usize,
    /// `5h + 4r + 2t + n + 6`
    pub c3: usize,
    pub breakdown: C3Breakdown,
}

/// How the six extra frame parameters of the D-H model are allocated.
pub const DH_FRAME_ALLOCATION: &str =
    "of the 6 frame parameters, 4 belong to the base-to-first-joint \
transform (theta, d, alpha, a) and 2 to the last-joint-to-tool transform (theta, d)";

pub fn counts(census: JointCensus) -> IdentifiabilityReport {
    let JointCensus {
        helical: h,
        revolute: r,
        prismatic: t,
    } = census;
    let n = census.n();
    let breakdown = C3Breakdown {
        joint_twists: 5 * h + 4 * r + 2 * t,
        scale_factors: n,
        tool: 6,
    };
    IdentifiabilityReport {
        census,
        c1: 6 * r + 3 * t + 6,
        c2: 4 * r + 2 * t + 6,
        c3: breakdown.joint_twists + breakdown.scale_factors + breakdown.tool,
        breakdown,
    }
}

impl fmt::Display for IdentifiabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.census;
        writeln!(
            f,
            "joints: n = {} (helical h = {}, revolute r = {}, prismatic t = {})",
            c.n(),
            c.helical,
            c.revolute,
            c.prismatic
        )?;
        writeln!(f, "C1 = 6r + 3t + 6            = {}", self.c1)?;
        writeln!(f, "C2 = 4r + 2t + 6            = {}", self.c2)?;
        writeln!(
            f,
            "C3 = 5h + 4r + 2t + n + 6    = {} + {} + {} = {}",
            self.breakdown.joint_twists, self.breakdown.scale_factors, self.breakdown.tool, self.c3
        )?;
        write!(f, "D-H frames: {DH_FRAME_ALLOCATION}")
    }
}
