//! Line-oriented instance files:
//!
//! ```text
//! mode = standard
//! n = 3
//! field = Q          # or: Fp 32003
//! f = x1^2
//! g = x2^3
//! ```
//!
//! Blank lines and `#` comments are ignored. `field` defaults to `Q`.

use std::path::Path;

use thiserror::Error;

use super::{validate_map_with, DeJonquieresMap, MapError};
use crate::oracle::Oracle;
use crate::poly::{parse_poly, Field, Mode, PolyError, Ring, RingSpec};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Poly { line: usize, source: PolyError },
    #[error("{0}")]
    Invalid(#[from] MapError),
}

/// Parsed but not yet validated instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub mode: Mode,
    pub n: usize,
    pub field: Field,
    pub f: String,
    pub g: String,
    f_line: usize,
    g_line: usize,
}

pub fn parse_field(text: &str) -> Option<Field> {
    let t = text.trim();
    if t == "Q" {
        return Some(Field::Rationals);
    }
    let rest = t.strip_prefix("Fp")?.trim_start_matches(['=', ' ']);
    rest.trim().parse().ok().map(Field::Prime)
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut mode = None;
    let mut n = None;
    let mut field = None;
    let mut f = None;
    let mut g = None;
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(InstanceError::Format { line, msg: format!("expected `key = value`, got `{content}`") });
        };
        let (key, value) = (key.trim(), value.trim());
        let fmt_err = |msg: String| InstanceError::Format { line, msg };
        let dup = |slot_set: bool| if slot_set { Err(fmt_err(format!("duplicate key `{key}`"))) } else { Ok(()) };
        match key {
            "mode" => {
                dup(mode.is_some())?;
                mode = Some(match value {
                    "standard" => Mode::Standard,
                    "generalized" => Mode::Generalized,
                    _ => return Err(fmt_err(format!("unknown mode `{value}`"))),
                });
            }
            "n" => {
                dup(n.is_some())?;
                n = Some(value.parse::<usize>().map_err(|_| fmt_err(format!("invalid n `{value}`")))?);
            }
            "field" => {
                dup(field.is_some())?;
                field = Some(parse_field(value).ok_or_else(|| fmt_err(format!("invalid field `{value}`")))?);
            }
            "f" => {
                dup(f.is_some())?;
                f = Some((value.to_string(), line));
            }
            "g" => {
                dup(g.is_some())?;
                g = Some((value.to_string(), line));
            }
            _ => return Err(fmt_err(format!("unknown key `{key}`"))),
        }
    }
    let missing = |name: &str| InstanceError::Format { line: last_line + 1, msg: format!("missing `{name} =` line") };
    let (f, f_line) = f.ok_or_else(|| missing("f"))?;
    let (g, g_line) = g.ok_or_else(|| missing("g"))?;
    Ok(Instance {
        mode: mode.ok_or_else(|| missing("mode"))?,
        n: n.ok_or_else(|| missing("n"))?,
        field: field.unwrap_or(Field::Rationals),
        f,
        g,
        f_line,
        g_line,
    })
}

impl Instance {
    pub fn ring_spec(&self) -> Result<RingSpec, InstanceError> {
        RingSpec::new(self.mode, self.n, self.field).map_err(|e| InstanceError::Format { line: 0, msg: e.to_string() })
    }

    pub fn validate(&self, oracle: &Oracle) -> Result<DeJonquieresMap, InstanceError> {
        let ring = Ring::new(self.ring_spec()?);
        let f = parse_poly(&self.f, &ring).map_err(|source| InstanceError::Poly { line: self.f_line, source })?;
        let g = parse_poly(&self.g, &ring).map_err(|source| InstanceError::Poly { line: self.g_line, source })?;
        Ok(validate_map_with(&ring, f, g, oracle)?)
    }
}

/// Reads, parses and validates an instance file. `field` overrides the
/// file's field when given.
pub fn load_instance(path: &Path, field: Option<Field>, oracle: &Oracle) -> Result<DeJonquieresMap, InstanceError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| InstanceError::Io { path: path.display().to_string(), source })?;
    let mut inst = parse_instance(&text)?;
    if let Some(field) = field {
        inst.field = field;
    }
    inst.validate(oracle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture_text() {
        let inst = parse_instance("mode = standard\nn = 3\n# comment\nf = x1^2\ng = x2^3\n").unwrap();
        assert_eq!(inst.mode, Mode::Standard);
        assert_eq!(inst.n, 3);
        assert_eq!(inst.field, Field::Rationals);
        let map = inst.validate(&Oracle::default()).unwrap();
        assert_eq!(map.d(), 3);
    }

    #[test]
    fn field_forms() {
        assert_eq!(parse_field("Q"), Some(Field::Rationals));
        assert_eq!(parse_field("Fp 32003"), Some(Field::Prime(32003)));
        assert_eq!(parse_field("Fp=7"), Some(Field::Prime(7)));
        assert_eq!(parse_field("R"), None);
    }

    #[test]
    fn missing_g_reports_line() {
        let err = parse_instance("mode = standard\nn = 3\nf = x1^2\n").unwrap_err();
        match err {
            InstanceError::Format { line, msg } => {
                assert_eq!(line, 4);
                assert!(msg.contains("g ="), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(matches!(
            parse_instance("mode = standard\nn = 3\nh = x1\n"),
            Err(InstanceError::Format { line: 3, .. })
        ));
        assert!(matches!(
            parse_instance("n = 3\nn = 4\n"),
            Err(InstanceError::Format { line: 2, .. })
        ));
    }

    #[test]
    fn not_monoid_names_term() {
        let inst = parse_instance("mode = generalized\nn = 3\nf = x3*x4^2\ng = x1^4\n").unwrap();
        let err = inst.validate(&Oracle::default()).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, InstanceError::Invalid(MapError::NotMonoid { .. })));
        assert!(msg.contains("x3*x4^2"), "{msg}");
    }

    #[test]
    fn polynomial_errors_carry_line() {
        let inst = parse_instance("mode = standard\nn = 3\nf = x1^2\ng = x9^3\n").unwrap();
        assert!(matches!(inst.validate(&Oracle::default()), Err(InstanceError::Poly { line: 4, .. })));
    }
}
