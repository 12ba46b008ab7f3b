use std::process::{Command, Output};

fn poedh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poedh"))
        .args(args)
        .output()
        .expect("poedh binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn lists_fixtures() {
    let out = poedh(&["fixtures"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fixture:puma560_nominal"));
    assert!(text.contains("fixture:puma560_actual"));
}

#[test]
fn convert_prints_the_table_and_writes_a_loadable_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dh.toml");
    let out = poedh(&[
        "convert",
        "fixture:puma560_nominal",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for label in ["BH0", "0H1", "5H6", "6HT"] {
        assert!(text.contains(label), "missing {label} in\n{text}");
    }
    let fk = poedh(&["fk", path.to_str().unwrap(), "--q", "0,0,0,0,0,0"]);
    assert!(fk.status.success());
    let first: Vec<f64> = stdout(&fk)
        .lines()
        .next()
        .unwrap()
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((first[3] - 250.0).abs() < 1e-9, "{first:?}");
}

#[test]
fn fk_agrees_between_poe_and_converted_dh() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dh.toml");
    assert!(poedh(&[
        "convert",
        "fixture:puma560_actual",
        "--out",
        path.to_str().unwrap()
    ])
    .status
    .success());
    let q = "-0.4,1.2,-2.9,0.1,0.8,-1.7";
    let a = stdout(&poedh(&["fk", "fixture:puma560_actual", "--q", q]));
    let b = stdout(&poedh(&["fk", path.to_str().unwrap(), "--q", q]));
    let parse = |s: &str| {
        s.split_whitespace()
            .map(|x| x.parse::<f64>().unwrap())
            .collect::<Vec<_>>()
    };
    let (a, b) = (parse(&a), parse(&b));
    assert_eq!(a.len(), 16);
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-8));
}

#[test]
fn identify_reports_the_three_counts() {
    let text = stdout(&poedh(&["identify", "fixture:puma560_nominal"]));
    for needle in ["42", "30", "36"] {
        assert!(text.contains(needle), "missing {needle} in\n{text}");
    }
}

#[test]
fn input_errors_exit_with_status_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "schema_version = 1\nmodel = \"poe\"\njoints = [[\n").unwrap();
    let bad_s = bad.to_str().unwrap();
    for args in [
        vec!["convert", bad_s],
        vec!["convert", "fixture:nope"],
        vec![
            "validate",
            "fixture:puma560_actual",
            "--dh",
            "fixture:puma560_nominal",
        ],
        vec!["fk", "fixture:puma560_actual", "--q", "1,2"],
        vec!["convert"],
    ] {
        let out = poedh(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let missing = poedh(&["convert", dir.path().join("absent.toml").to_str().unwrap()]);
    assert_ne!(missing.status.code(), Some(0));
}

#[test]
fn validate_writes_summary_and_honours_range() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.csv");
    let out = poedh(&[
        "validate",
        "fixture:puma560_nominal",
        "--samples",
        "10",
        "--range",
        "-0.5,0.5",
        "--summary-csv",
        summary.to_str().unwrap(),
        "--tolerance",
        "1e-9",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(std::fs::read_to_string(summary).unwrap().lines().count(), 3);
    let bad_range = poedh(&["validate", "fixture:puma560_nominal", "--range", "1,0"]);
    assert_eq!(bad_range.status.code(), Some(2));
}
