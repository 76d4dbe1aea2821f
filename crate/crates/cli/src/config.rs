//! The `key = value` run configuration.
//!
//! ```text
//! # Bertin's example
//! p = 2
//! n = 4
//! degree_bound = 12
//! generator = 0 1 0 0; 0 0 1 0; 0 0 0 1; 1 0 0 0
//! ideal_element = x1 + x2 + x3 + x4
//! command = diagnose
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use modinv::algebra::{Matrix, Polynomial, PrimeField, Ring};
use modinv::Limits;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Group,
    Invariants,
    Present,
    Diagnose,
    Grade,
    Transfer,
    Verify,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Group,
        Command::Invariants,
        Command::Present,
        Command::Diagnose,
        Command::Grade,
        Command::Transfer,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Group => "group",
            Command::Invariants => "invariants",
            Command::Present => "present",
            Command::Diagnose => "diagnose",
            Command::Grade => "grade",
            Command::Transfer => "transfer",
            Command::Verify => "verify",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p: u64,
    pub n: usize,
    pub generators: Vec<Matrix>,
    pub degree_bound: Option<u32>,
    /// Invariants in `x1..xn`, for `grade`.
    pub ideal: Vec<Polynomial>,
    pub command: Option<Command>,
    /// Not part of the text format; set from the environment.
    pub caps: Limits,
}

impl RunConfig {
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated")
    }

    pub fn ring(&self) -> Arc<Ring> {
        Ring::standard(self.field(), self.n)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_int<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| parse_error(line, format!("{key} expects a non-negative integer, got {value:?}")))
}

fn parse_rows(line: usize, value: &str) -> Result<Vec<Vec<u64>>, CliError> {
    value
        .split(';')
        .map(|row| {
            let entries: Vec<u64> = row
                .split_whitespace()
                .map(|e| parse_int(line, "generator", e))
                .collect::<Result<_, _>>()?;
            if entries.is_empty() {
                return Err(parse_error(line, "empty generator row"));
            }
            Ok(entries)
        })
        .collect()
}

/// Parses the line format. Matrices and polynomials are checked against
/// `p` and `n` once all lines are read.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut p: Option<(usize, u64)> = None;
    let mut n: Option<(usize, usize)> = None;
    let mut degree_bound = None;
    let mut command = None;
    let mut generators: Vec<(usize, Vec<Vec<u64>>)> = Vec::new();
    let mut ideal: Vec<(usize, String)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_error(line, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        let once = |seen: bool| {
            if seen {
                Err(parse_error(line, format!("duplicate key {key}")))
            } else {
                Ok(())
            }
        };
        match key {
            "p" => {
                once(p.is_some())?;
                p = Some((line, parse_int(line, key, value)?));
            }
            "n" => {
                once(n.is_some())?;
                n = Some((line, parse_int(line, key, value)?));
            }
            "degree_bound" => {
                once(degree_bound.is_some())?;
                degree_bound = Some(parse_int(line, key, value)?);
            }
            "command" => {
                once(command.is_some())?;
                command = Some(value.parse().map_err(|e| parse_error(line, e))?);
            }
            "generator" => generators.push((line, parse_rows(line, value)?)),
            "ideal_element" => ideal.push((line, value.to_string())),
            _ => return Err(parse_error(line, format!("unknown key {key:?}"))),
        }
    }

    let (_, p) = p.ok_or_else(|| CliError::Validation("missing key p".into()))?;
    let field = PrimeField::new(p).map_err(|_| CliError::Validation(format!("p = {p} is not prime")))?;
    let (_, n) = n.ok_or_else(|| CliError::Validation("missing key n".into()))?;
    if n == 0 {
        return Err(CliError::Validation("n must be positive".into()));
    }
    if generators.is_empty() {
        return Err(CliError::Validation("at least one generator is required".into()));
    }
    let generators = generators
        .into_iter()
        .map(|(line, rows)| {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Validation(format!("line {line}: generator is not {n}x{n}")));
            }
            if rows.iter().flatten().any(|&e| e >= p) {
                return Err(CliError::Validation(format!("line {line}: entries must lie in [0, {p})")));
            }
            let rows = rows.into_iter().map(|r| r.into_iter().map(|e| e as u32).collect()).collect();
            let m = Matrix::from_rows(field, rows).map_err(|e| CliError::Validation(format!("line {line}: {e}")))?;
            if m.rank() < n {
                return Err(CliError::Validation(format!("line {line}: generator is singular over F_{p}")));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ring = Ring::standard(field, n);
    let ideal = ideal
        .into_iter()
        .map(|(line, text)| Polynomial::parse(&ring, &text).map_err(|e| parse_error(line, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(RunConfig {
        p,
        n,
        generators,
        degree_bound,
        ideal,
        command,
        caps: Limits::default(),
    })
}

/// Canonical text of a configuration; `parse_config` inverts it.
pub fn render_config(config: &RunConfig) -> String {
    let mut out = format!("p = {}\nn = {}\n", config.p, config.n);
    if let Some(d) = config.degree_bound {
        out += &format!("degree_bound = {d}\n");
    }
    for g in &config.generators {
        let rows: Vec<String> = g
            .rows()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        out += &format!("generator = {}\n", rows.join("; "));
    }
    for f in &config.ideal {
        out += &format!("ideal_element = {f}\n");
    }
    if let Some(c) = config.command {
        out += &format!("command = {c}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BERTIN: &str = "# Bertin\np = 2\nn = 4\ngenerator = 0 1 0 0; 0 0 1 0; 0 0 0 1; 1 0 0 0\n";

    #[test]
    fn minimal_bertin() {
        let c = parse_config(BERTIN).unwrap();
        assert_eq!((c.p, c.n, c.generators.len()), (2, 4, 1));
        assert_eq!(c.degree_bound, None);
        assert_eq!(c.command, None);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(parse_config("p = 4\nn = 1\ngenerator = 1\n"), Err(CliError::Validation(_))));
        assert!(matches!(parse_config("p = 2\nn = 2\n"), Err(CliError::Validation(_))));
        assert!(matches!(parse_config("p = 2\nn = 2\ngenerator = 1 1; 1 1\n"), Err(CliError::Validation(_))));
        assert!(matches!(parse_config("p = 2\nn = 2\ngenerator = 1 0\n"), Err(CliError::Validation(_))));
        assert!(matches!(parse_config("p = 3\nn = 1\ngenerator = 3\n"), Err(CliError::Validation(_))));
    }

    #[test]
    fn parse_errors_carry_lines() {
        match parse_config("p = 2\n\nfoo = 1\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_config("p = 2\np = 3\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_config("p 2\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_config("p = 2\nn = 1\ngenerator = 1\nideal_element = x1 +\n"),
            Err(CliError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn render_round_trips() {
        let text = format!("{BERTIN}degree_bound = 12\nideal_element = x1*x3 + x2*x4\ncommand = grade\n");
        let c = parse_config(&text).unwrap();
        assert_eq!(parse_config(&render_config(&c)).unwrap(), c);
        assert_eq!(render_config(&parse_config(&render_config(&c)).unwrap()), render_config(&c));
    }
}
