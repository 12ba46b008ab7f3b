//! Randomized FK-equivalence experiment between a POE model and a D-H model.
//!
//! Joint values are drawn from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `seed_from_u64(seed)`. Each value is `lo + (hi - lo) * u`, where `u`
//! is the generator's standard `f64` in `[0, 1)` (53 high bits of a `u64`).
//! Configurations are drawn row by row, joint 1 first.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{HarnessError, Result};
use crate::error::KinematicsError;
use crate::kinematics::{dh_fk, DhModel, PoeModel};
use crate::liegroup::{euler_zyx, Transform};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationConfig {
    pub samples: usize,
    pub seed: u64,
    pub joint_range: (f64, f64),
    /// Pass/fail bound on both the rotation and the translation error.
    pub tolerance: Option<f64>,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 0,
            joint_range: (-std::f64::consts::PI, std::f64::consts::PI),
            tolerance: None,
        }
    }
}

impl ValidationConfig {
    pub fn check(&self) -> Result<()> {
        let (lo, hi) = self.joint_range;
        if self.samples == 0 {
            return Err(HarnessError::InvalidConfig(
                "samples must be at least 1".into(),
            ));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(HarnessError::InvalidConfig(format!(
                "joint range [{lo}, {hi}] is empty"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorRecord {
    #[serde(rename = "index")]
    pub config_index: usize,
    /// Norm of the ZYX Euler vector of `R_dh^T R_poe` (rad).
    #[serde(rename = "e_R_rad")]
    pub e_r: f64,
    /// Translation error (mm).
    #[serde(rename = "e_t_mm")]
    pub e_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationSummary {
    pub samples: usize,
    pub max_e_r: f64,
    pub mean_e_r: f64,
    pub max_e_t: f64,
    pub mean_e_t: f64,
}

impl ValidationSummary {
    fn from_records(records: &[ErrorRecord]) -> Self {
        let n = records.len() as f64;
        ValidationSummary {
            samples: records.len(),
            max_e_r: records.iter().map(|r| r.e_r).fold(0.0, f64::max),
            mean_e_r: records.iter().map(|r| r.e_r).sum::<f64>() / n,
            max_e_t: records.iter().map(|r| r.e_t).fold(0.0, f64::max),
            mean_e_t: records.iter().map(|r| r.e_t).sum::<f64>() / n,
        }
    }

    pub fn within(&self, tolerance: f64) -> bool {
        self.max_e_r <= tolerance && self.max_e_t <= tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub configurations: Vec<Vec<f64>>,
    pub records: Vec<ErrorRecord>,
    pub summary: ValidationSummary,
}

impl ValidationReport {
    /// `None` when the config carried no tolerance.
    pub fn passed(&self, cfg: &ValidationConfig) -> Option<bool> {
        cfg.tolerance.map(|t| self.summary.within(t))
    }
}

/// Rotation and translation errors between two tool poses.
pub fn pose_errors(h_dh: &Transform<f64>, h_poe: &Transform<f64>) -> (f64, f64) {
    let residual = h_dh.rotation.transpose() * h_poe.rotation;
    let e_r = euler_zyx(&residual).norm();
    let e_t = (h_dh.translation - h_poe.translation).norm();
    (e_r, e_t)
}

/// Deterministic joint configurations for `cfg`.
pub fn sample_configurations(cfg: &ValidationConfig, dof: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.joint_range;
    (0..cfg.samples)
        .map(|_| {
            (0..dof)
                .map(|_| lo + (hi - lo) * rng.random::<f64>())
                .collect()
        })
        .collect()
}

/// Compares POE and D-H forward kinematics over sampled configurations.
///
/// The POE side is evaluated in the model's own convention.
pub fn validate(
    poe: &PoeModel<f64>,
    dh: &DhModel<f64>,
    cfg: &ValidationConfig,
) -> Result<ValidationReport> {
    cfg.check()?;
    if poe.dof() != dh.dof() {
        return Err(KinematicsError::ArityMismatch {
            expected: poe.dof(),
            found: dh.dof(),
        }
        .into());
    }
    let configurations = sample_configurations(cfg, poe.dof());
    let records = configurations
        .par_iter()
        .enumerate()
        .map(|(i, q)| {
            let (e_r, e_t) = pose_errors(&dh_fk(dh, q)?, &poe.fk(q)?);
            Ok(ErrorRecord {
                config_index: i,
                e_r,
                e_t,
            })
        })
        .collect::<Result<Vec<_>, KinematicsError>>()?;
    let summary = ValidationSummary::from_records(&records);
    Ok(ValidationReport {
        configurations,
        records,
        summary,
    })
}

fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(source) => HarnessError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => HarnessError::InvalidConfig(format!("{other:?}")),
    })
}

/// Writes `index,e_R_rad,e_t_mm`, one row per configuration.
pub fn write_csv(records: &[ErrorRecord], path: &Path) -> Result<()> {
    let mut w = csv_writer(path)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    metric: &'a str,
    max: f64,
    mean: f64,
}

pub fn write_summary_csv(summary: &ValidationSummary, path: &Path) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.serialize(SummaryRow {
        metric: "e_R_rad",
        max: summary.max_e_r,
        mean: summary.mean_e_r,
    })?;
    w.serialize(SummaryRow {
        metric: "e_t_mm",
        max: summary.max_e_t,
        mean: summary.mean_e_t,
    })?;
    w.flush().map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}
