//! Built-in example configurations.

use crate::config::{parse_config, RunConfig};
use crate::CliError;

const BERTIN: &str = "\
p = 2
n = 4
degree_bound = 12
generator = 0 1 0 0; 0 0 1 0; 0 0 0 1; 1 0 0 0
ideal_element = x1 + x2 + x3 + x4
ideal_element = x1*x3 + x2*x4
ideal_element = x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4
";

const SWAP2: &str = "\
p = 2
n = 2
generator = 0 1; 1 0
";

const CYC3_F3: &str = "\
p = 3
n = 3
generator = 0 1 0; 0 0 1; 1 0 0
";

const S3_F2: &str = "\
p = 2
n = 3
generator = 0 1 0; 1 0 0; 0 0 1
generator = 0 1 0; 0 0 1; 1 0 0
";

const TRIVIAL4: &str = "\
p = 2
n = 4
generator = 1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1
";

const CYC3_F2: &str = "\
p = 2
n = 3
generator = 0 1 0; 0 0 1; 1 0 0
";

const ENTRIES: [(&str, &str); 6] = [
    ("bertin", BERTIN),
    ("swap2", SWAP2),
    ("cyc3_f3", CYC3_F3),
    ("s3_f2", S3_F2),
    ("trivial4", TRIVIAL4),
    ("cyc3_f2", CYC3_F2),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

pub fn catalog() -> Vec<(&'static str, RunConfig)> {
    ENTRIES
        .iter()
        .map(|(name, text)| (*name, parse_config(text).expect("catalog entries parse")))
        .collect()
}

pub fn lookup(name: &str) -> Result<RunConfig, CliError> {
    ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_config(text).expect("catalog entries parse"))
        .ok_or_else(|| CliError::UnknownExample {
            name: name.to_string(),
            known: names().join(", "),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::render_config;

    #[test]
    fn entries_round_trip() {
        for (name, c) in catalog() {
            assert_eq!(parse_config(&render_config(&c)).unwrap(), c, "{name}");
        }
    }

    #[test]
    fn bertin_carries_its_ideal() {
        let c = lookup("bertin").unwrap();
        assert_eq!(c.ideal.len(), 3);
        assert_eq!(c.ideal[1].to_string(), "x1*x3 + x2*x4");
        assert_eq!(c.degree_bound, Some(12));
    }

    #[test]
    fn unknown_name_lists_entries() {
        match lookup("nope") {
            Err(CliError::UnknownExample { known, .. }) => assert!(known.contains("bertin") && known.contains("cyc3_f2")),
            other => panic!("{other:?}"),
        }
    }
}
