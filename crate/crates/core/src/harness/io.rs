//! TOML model files.
//!
//! Every file starts with `schema_version` and `model = "poe" | "dh"`.
//! Twists are 6-element `[w1, w2, w3, v1, v2, v3]` arrays; angles are in
//! radians and lengths in millimetres.

use std::fs;
use std::path::Path;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::{fixtures, HarnessError, Model, Result};
use crate::kinematics::{
    Convention, DhFrame, DhModel, DhRow, DhTool, JointKind, JointSpec, PoeModel,
};
use crate::liegroup::{Transform, Twist};

pub const SCHEMA_VERSION: i64 = 1;

const FIXTURE_PREFIX: &str = "fixture:";

#[derive(Deserialize)]
struct Header {
    schema_version: Option<i64>,
    model: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoeFile {
    schema_version: i64,
    model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    convention: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tool_twist: Option<Vec<f64>>,
    #[serde(default)]
    joints: Vec<PoeJointEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    frames: Vec<FrameEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoeJointEntry {
    twist: Vec<f64>,
    #[serde(default)]
    offset: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameEntry {
    rotation: Vec<Vec<f64>>,
    translation: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DhFile {
    schema_version: i64,
    model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    base: DhFrameEntry,
    #[serde(default)]
    joints: Vec<DhJointEntry>,
    tool: DhToolEntry,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DhFrameEntry {
    theta: f64,
    d: f64,
    alpha: f64,
    a: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DhJointEntry {
    kind: String,
    #[serde(default)]
    pitch: f64,
    #[serde(default = "one")]
    scale: f64,
    theta: f64,
    d: f64,
    alpha: f64,
    a: f64,
    #[serde(default)]
    offset_merged: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DhToolEntry {
    theta: f64,
    d: f64,
}

fn one() -> f64 {
    1.0
}

struct Ctx<'a> {
    origin: &'a str,
    text: &'a str,
}

impl Ctx<'_> {
    fn schema(&self, field: impl Into<String>, message: impl Into<String>) -> HarnessError {
        HarnessError::Schema {
            origin: self.origin.to_string(),
            field: field.into(),
            message: message.into(),
        }
    }

    fn parse_error(&self, err: toml::de::Error) -> HarnessError {
        let (line, column) = match err.span() {
            Some(span) => {
                let before = &self.text[..span.start.min(self.text.len())];
                let line = before.matches('\n').count() + 1;
                let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                (Some(line), Some(column))
            }
            None => (None, None),
        };
        HarnessError::Parse {
            origin: self.origin.to_string(),
            line,
            column,
            message: err.message().to_string(),
        }
    }

    fn deserialize<D: for<'de> Deserialize<'de>>(&self) -> Result<D> {
        toml::from_str(self.text).map_err(|e| self.parse_error(e))
    }

    fn twist(&self, field: &str, v: &[f64]) -> Result<Twist<f64>> {
        let arr: [f64; 6] = v.try_into().map_err(|_| {
            self.schema(
                field,
                format!("twist must have 6 elements, got {}", v.len()),
            )
        })?;
        if !arr.iter().all(|x| x.is_finite()) {
            return Err(self.schema(field, "twist elements must be finite"));
        }
        Ok(Twist::from_array(arr))
    }

    fn vec3(&self, field: &str, v: &[f64]) -> Result<Vector3<f64>> {
        if v.len() != 3 {
            return Err(self.schema(field, format!("expected 3 elements, got {}", v.len())));
        }
        Ok(Vector3::new(v[0], v[1], v[2]))
    }

    fn kind(&self, field: &str, s: &str) -> Result<JointKind> {
        match s {
            "revolute" => Ok(JointKind::Revolute),
            "prismatic" => Ok(JointKind::Prismatic),
            "helical" => Ok(JointKind::Helical),
            other => Err(self.schema(
                field,
                format!("unknown joint kind `{other}` (expected revolute, prismatic or helical)"),
            )),
        }
    }
}

fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::Base => "base",
        Convention::Tool => "tool",
        Convention::Local => "local",
    }
}

/// Parses a model document. `origin` names the source in diagnostics.
pub fn parse_model(text: &str, origin: &str) -> Result<Model> {
    let ctx = Ctx { origin, text };
    let header: Header = ctx.deserialize()?;
    let version = header
        .schema_version
        .ok_or_else(|| ctx.schema("schema_version", "missing"))?;
    if version != SCHEMA_VERSION {
        return Err(HarnessError::SchemaVersion {
            origin: origin.to_string(),
            found: version,
            supported: SCHEMA_VERSION,
        });
    }
    match header.model.as_deref() {
        Some("poe") => parse_poe(&ctx).map(Model::Poe),
        Some("dh") => parse_dh(&ctx).map(Model::Dh),
        Some(other) => Err(ctx.schema(
            "model",
            format!("unknown model type `{other}` (expected poe or dh)"),
        )),
        None => Err(ctx.schema("model", "missing")),
    }
}

fn parse_poe(ctx: &Ctx) -> Result<PoeModel<f64>> {
    let file: PoeFile = ctx.deserialize()?;
    let convention = match file.convention.as_str() {
        "base" => Convention::Base,
        "tool" => Convention::Tool,
        "local" => Convention::Local,
        other => {
            return Err(ctx.schema(
                "convention",
                format!("unknown convention `{other}` (expected base, tool or local)"),
            ))
        }
    };
    let mut joints = Vec::with_capacity(file.joints.len());
    for (i, j) in file.joints.iter().enumerate() {
        let field = format!("joint {} (joints[{i}])", i + 1);
        let twist = ctx.twist(&format!("{field}.twist"), &j.twist)?;
        let declared = j
            .kind
            .as_deref()
            .map(|k| ctx.kind(&format!("{field}.kind"), k))
            .transpose()?;
        joints.push(JointSpec {
            twist,
            offset: j.offset,
            declared,
        });
    }
    let tool_twist = file
        .tool_twist
        .as_deref()
        .map(|t| ctx.twist("tool_twist", t))
        .transpose()?;
    let mut local_frames = Vec::with_capacity(file.frames.len());
    for (i, f) in file.frames.iter().enumerate() {
        let field = format!("frames[{i}]");
        if f.rotation.len() != 3 {
            return Err(ctx.schema(format!("{field}.rotation"), "expected 3 rows"));
        }
        let rows = f
            .rotation
            .iter()
            .enumerate()
            .map(|(r, row)| ctx.vec3(&format!("{field}.rotation[{r}]"), row))
            .collect::<Result<Vec<_>>>()?;
        let rotation = Matrix3::from_rows(&[
            rows[0].transpose(),
            rows[1].transpose(),
            rows[2].transpose(),
        ]);
        let translation = ctx.vec3(&format!("{field}.translation"), &f.translation)?;
        local_frames.push(Transform::new(rotation, translation));
    }
    let model = PoeModel {
        convention,
        joints,
        tool_twist,
        local_frames,
    };
    model
        .validate()
        .map_err(|e| ctx.schema("model", e.to_string()))?;
    Ok(model)
}

fn parse_dh(ctx: &Ctx) -> Result<DhModel<f64>> {
    let file: DhFile = ctx.deserialize()?;
    let frame = |f: &DhFrameEntry| DhFrame::new(f.theta, f.d, f.alpha, f.a);
    let mut rows = Vec::with_capacity(file.joints.len());
    for (i, j) in file.joints.iter().enumerate() {
        let kind = ctx.kind(&format!("joint {} (joints[{i}]).kind", i + 1), &j.kind)?;
        rows.push(DhRow {
            frame: DhFrame::new(j.theta, j.d, j.alpha, j.a),
            kind,
            pitch: j.pitch,
            scale: j.scale,
            offset_merged: j.offset_merged,
        });
    }
    Ok(DhModel {
        base: frame(&file.base),
        rows,
        tool: DhTool {
            theta: file.tool.theta,
            d: file.tool.d,
        },
    })
}

/// Serializes a model to the TOML document format.
pub fn model_to_string(model: &Model, name: Option<&str>) -> String {
    let name = name.map(str::to_string);
    let out = match model {
        Model::Poe(m) => toml::to_string(&PoeFile {
            schema_version: SCHEMA_VERSION,
            model: "poe".into(),
            name,
            convention: convention_name(m.convention).into(),
            tool_twist: m.tool_twist.map(|t| t.to_array().to_vec()),
            joints: m
                .joints
                .iter()
                .map(|j| PoeJointEntry {
                    twist: j.twist.to_array().to_vec(),
                    offset: j.offset,
                    kind: j.declared.map(|k| k.name().to_string()),
                })
                .collect(),
            frames: m
                .local_frames
                .iter()
                .map(|f| FrameEntry {
                    rotation: f
                        .rotation
                        .row_iter()
                        .map(|r| r.iter().copied().collect())
                        .collect(),
                    translation: f.translation.iter().copied().collect(),
                })
                .collect(),
        }),
        Model::Dh(m) => toml::to_string(&DhFile {
            schema_version: SCHEMA_VERSION,
            model: "dh".into(),
            name,
            base: DhFrameEntry {
                theta: m.base.theta,
                d: m.base.d,
                alpha: m.base.alpha,
                a: m.base.a,
            },
            joints: m
                .rows
                .iter()
                .map(|r| DhJointEntry {
                    kind: r.kind.name().to_string(),
                    pitch: r.pitch,
                    scale: r.scale,
                    theta: r.frame.theta,
                    d: r.frame.d,
                    alpha: r.frame.alpha,
                    a: r.frame.a,
                    offset_merged: r.offset_merged,
                })
                .collect(),
            tool: DhToolEntry {
                theta: m.tool.theta,
                d: m.tool.d,
            },
        }),
    };
    out.expect("model documents contain only serializable values")
}

pub fn save_model(model: &Model, path: &Path) -> Result<()> {
    fs::write(path, model_to_string(model, None)).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a model from a path, or from an embedded fixture via `fixture:<name>`.
pub fn load_model(source: &str) -> Result<Model> {
    if let Some(name) = source.strip_prefix(FIXTURE_PREFIX) {
        let text =
            fixtures::fixture(name).ok_or_else(|| HarnessError::UnknownFixture(name.into()))?;
        return parse_model(text, source);
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    parse_model(&text, source)
}
