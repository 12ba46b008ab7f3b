//! Model files, embedded fixtures, the randomized FK-equivalence experiment
//! and text/CSV reporting. Everything here works in `f64`.

mod fixtures;
mod io;
mod report;
mod validate;

use std::path::PathBuf;

use thiserror::Error;

use crate::error::KinematicsError;
use crate::kinematics::{DhModel, PoeModel};

pub use fixtures::{fixture, fixture_names, FIXTURES};
pub use io::{load_model, model_to_string, parse_model, save_model, SCHEMA_VERSION};
pub use report::{format_dh_report, format_transform};
pub use validate::{
    pose_errors, sample_configurations, validate, write_csv, write_summary_csv, ErrorRecord,
    ValidationConfig, ValidationReport, ValidationSummary,
};

/// A model loaded from a file or fixture.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Poe(PoeModel<f64>),
    Dh(DhModel<f64>),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Poe(_) => "poe",
            Model::Dh(_) => "dh",
        }
    }
}

impl From<PoeModel<f64>> for Model {
    fn from(m: PoeModel<f64>) -> Self {
        Model::Poe(m)
    }
}

impl From<DhModel<f64>> for Model {
    fn from(m: DhModel<f64>) -> Self {
        Model::Dh(m)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{origin}:{}: {message}", location(*line, *column))]
    Parse {
        origin: String,
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },

    #[error("{origin}: {field}: {message}")]
    Schema {
        origin: String,
        field: String,
        message: String,
    },

    #[error("{origin}: unsupported schema_version {found} (supported: {supported})")]
    SchemaVersion {
        origin: String,
        found: i64,
        supported: i64,
    },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("expected a {expected} model, got a {found} model")]
    ModelKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("{l}:{c}"),
        (Some(l), None) => l.to_string(),
        _ => "?".to_string(),
    }
}

impl HarnessError {
    /// True for malformed input: bad syntax, schema violations, unknown names, wrong joint counts.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            HarnessError::Parse { .. }
                | HarnessError::Schema { .. }
                | HarnessError::SchemaVersion { .. }
                | HarnessError::UnknownFixture(_)
                | HarnessError::ModelKind { .. }
                | HarnessError::InvalidConfig(_)
                | HarnessError::Kinematics(KinematicsError::ArityMismatch { .. })
        )
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
