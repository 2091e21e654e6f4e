//! Built-in fixtures, addressable by name from the CLI or from a manifest's
//! `fixture` key.

pub const FIXTURES: [(&str, &str); 6] = [
    ("gm_q", include_str!("fixtures/gm_q.toml")),
    ("res_sqrt5", include_str!("fixtures/res_sqrt5.toml")),
    ("normone_5", include_str!("fixtures/normone_5.toml")),
    ("res_sqrt2", include_str!("fixtures/res_sqrt2.toml")),
    ("dual_normone_v4", include_str!("fixtures/dual_normone_v4.toml")),
    ("s3_standard", include_str!("fixtures/s3_standard.toml")),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn fixture_source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
