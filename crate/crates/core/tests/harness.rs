mod common;

use common::*;
use poe_dh::harness::{
    fixture, fixture_names, load_model, model_to_string, parse_model, pose_errors, save_model,
    validate, write_csv, write_summary_csv, HarnessError, Model, ValidationConfig,
};
use poe_dh::{poe_to_dh, ConversionOptions, DhModel, JointSpec, PoeModel, Transform, Twist};
use proptest::prelude::*;

fn poe(model: Model) -> PoeModel<f64> {
    match model {
        Model::Poe(m) => m,
        Model::Dh(_) => panic!("expected a POE model"),
    }
}

fn actual_dh() -> (PoeModel<f64>, DhModel<f64>) {
    let poe = base_model(&PUMA_ACTUAL, PUMA_ACTUAL_TOOL);
    let dh = poe_to_dh(&poe, &ConversionOptions::default()).unwrap();
    (poe, dh)
}

#[test]
fn fixtures_carry_the_published_twists() {
    assert_eq!(
        fixture_names().collect::<Vec<_>>(),
        ["puma560_nominal", "puma560_actual"]
    );
    let nominal = poe(load_model("fixture:puma560_nominal").unwrap());
    let actual = poe(load_model("fixture:puma560_actual").unwrap());
    assert_eq!(nominal, base_model(&PUMA_NOMINAL, PUMA_NOMINAL_TOOL));
    assert_eq!(actual, base_model(&PUMA_ACTUAL, PUMA_ACTUAL_TOOL));
    assert!(fixture("puma560_other").is_none());
    assert!(matches!(
        load_model("fixture:puma560_other"),
        Err(HarnessError::UnknownFixture { .. })
    ));
}

#[test]
fn saved_models_load_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let (poe, dh) = actual_dh();
    for (i, model) in [Model::Poe(poe), Model::Dh(dh)].into_iter().enumerate() {
        let path = dir.path().join(format!("m{i}.toml"));
        save_model(&model, &path).unwrap();
        assert_eq!(load_model(path.to_str().unwrap()).unwrap(), model);
    }
}

#[test]
fn local_and_tool_models_survive_serialization() {
    let mut r = rng(3);
    let joints = || {
        (0..3)
            .map(|_| JointSpec::new(Twist::from_array(any_twist(&mut rng(9)))))
            .collect::<Vec<_>>()
    };
    let frames: Vec<Transform<f64>> = (0..4).map(|_| random_transform(&mut r)).collect();
    for model in [
        PoeModel::local(joints(), frames),
        PoeModel::tool(joints(), Twist::from_array([0.1, 0.0, 0.0, 1.0, 2.0, 3.0])),
    ] {
        let text = model_to_string(&Model::Poe(model.clone()), Some("roundtrip"));
        assert_eq!(poe(parse_model(&text, "roundtrip").unwrap()), model);
    }
}

#[test]
fn parse_errors_point_at_the_line() {
    let text = "schema_version = 1\nmodel = \"poe\"\nconvention = \"base\"\njoints = [\n";
    match parse_model(text, "broken.toml") {
        Err(e @ HarnessError::Parse { line, .. }) => {
            assert!(line.is_some_and(|l| l >= 4), "line {line:?}");
            assert!(e.is_input_error());
            assert!(e.to_string().contains("broken.toml"));
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn schema_errors_name_the_joint() {
    let text = r#"
schema_version = 1
model = "poe"
convention = "base"
tool_twist = [0, 0, 0, 1, 2, 3]

[[joints]]
twist = [0, 0, 1, 0, 0, 0]

[[joints]]
twist = [0, 0, 1, 0]
"#;
    let err = parse_model(text, "short.toml").unwrap_err();
    assert!(err.is_input_error());
    assert!(err.to_string().contains("joint 2"), "{err}");

    let versioned = text.replace("schema_version = 1", "schema_version = 99");
    assert!(matches!(
        parse_model(&versioned, "v.toml"),
        Err(HarnessError::SchemaVersion { .. })
    ));
    let unknown = text.replace("model = \"poe\"", "model = \"poe\"\ncolour = \"red\"");
    assert!(parse_model(&unknown, "u.toml")
        .unwrap_err()
        .is_input_error());
}

#[test]
fn validation_is_reproducible_and_seed_dependent() {
    let (poe, dh) = actual_dh();
    let cfg = ValidationConfig {
        samples: 30,
        seed: 5,
        ..Default::default()
    };
    let a = validate(&poe, &dh, &cfg).unwrap();
    assert_eq!(a, validate(&poe, &dh, &cfg).unwrap());
    let b = validate(&poe, &dh, &ValidationConfig { seed: 6, ..cfg }).unwrap();
    assert_ne!(a.configurations, b.configurations);
    assert!(a
        .records
        .iter()
        .enumerate()
        .all(|(i, r)| r.config_index == i));
    assert!(a
        .records
        .iter()
        .all(|r| r.e_r <= a.summary.max_e_r && r.e_t <= a.summary.max_e_t));
    assert!(a.summary.mean_e_t <= a.summary.max_e_t);
}

#[test]
fn a_perturbed_model_is_detected() {
    let (poe, mut dh) = actual_dh();
    dh.rows[0].frame.theta += 1e-3;
    let cfg = ValidationConfig {
        tolerance: Some(1e-9),
        ..Default::default()
    };
    let report = validate(&poe, &dh, &cfg).unwrap();
    assert!(report.summary.max_e_r >= 1e-4, "{}", report.summary.max_e_r);
    assert_eq!(report.passed(&cfg), Some(false));
}

#[test]
fn arity_mismatch_is_rejected() {
    let (poe, mut dh) = actual_dh();
    dh.rows.pop();
    assert!(matches!(
        validate(&poe, &dh, &ValidationConfig::default()),
        Err(HarnessError::Kinematics(_))
    ));
}

#[test]
fn csv_outputs_have_one_row_per_sample() {
    let dir = tempfile::tempdir().unwrap();
    let (poe, dh) = actual_dh();
    let report = validate(
        &poe,
        &dh,
        &ValidationConfig {
            samples: 17,
            ..Default::default()
        },
    )
    .unwrap();
    let rows = dir.path().join("rows.csv");
    let summary = dir.path().join("summary.csv");
    write_csv(&report.records, &rows).unwrap();
    write_summary_csv(&report.summary, &summary).unwrap();

    let mut reader = csv::Reader::from_path(&rows).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["index", "e_R_rad", "e_t_mm"]
    );
    let parsed: Vec<(usize, f64, f64)> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(parsed.len(), 17);
    for (rec, (i, e_r, e_t)) in report.records.iter().zip(&parsed) {
        assert_eq!((rec.config_index, rec.e_r, rec.e_t), (*i, *e_r, *e_t));
    }
    let text = std::fs::read_to_string(summary).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("metric,max,mean"));
}

proptest! {
    #[test]
    fn rotation_error_is_the_residual_angle(seed in any::<u64>(), angle in 1e-7..1e-3f64) {
        // Small residual about a random axis: the ZYX vector norm tracks the angle.
        let mut r = rng(seed);
        let h = random_transform(&mut r);
        let axis = unit_vec(&mut r);
        let w = axis * angle;
        let perturbed = h * oracle_exp(&[w.x, w.y, w.z, 0.0, 0.0, 0.0], 1.0);
        let (e_r, e_t) = pose_errors(&h, &perturbed);
        prop_assert!((e_r - angle).abs() <= angle * angle + 1e-15);
        prop_assert!(e_t < 1e-12);
    }

    #[test]
    fn random_dh_models_round_trip_through_text(seed in any::<u64>(), n in 0usize..7) {
        let dh = random_dh(&mut rng(seed), n);
        let model = Model::Dh(dh);
        let text = model_to_string(&model, None);
        prop_assert_eq!(parse_model(&text, "rt").unwrap(), model);
    }
}
