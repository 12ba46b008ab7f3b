//! Embedded models, addressable as `fixture:<name>`.

/// `(name, description, document)`
pub const FIXTURES: &[(&str, &str, &str)] = &[
    (
        "puma560_nominal",
        "PUMA 560, nominal POE parameters",
        include_str!("../../fixtures/puma560_nominal.toml"),
    ),
    (
        "puma560_actual",
        "PUMA 560, actual (unnormalized) POE parameters",
        include_str!("../../fixtures/puma560_actual.toml"),
    ),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, text)| *text)
}

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _, _)| *n)
}
