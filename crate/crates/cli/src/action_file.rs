//! The TOML action-file format.
//!
//! Integers are decimal strings (optional `-`, no leading zeros) so that
//! arbitrary precision survives any TOML reader. Matrices are lists of rows
//! and act on column coordinate vectors. [`ActionFile::to_toml`] is the
//! canonical writer: parsing its output and writing again gives the same
//! bytes.

use std::fmt::Write as _;

use lattice_actions::action::LatticeAction;
use lattice_actions::lattice::Lattice;
use lattice_actions::matrix::ZMatrix;
use lattice_actions::{Error, Result};
use num_bigint::BigInt;
use serde::Deserialize;

pub const HEADER: &str = "\
# lattice action file
# Matrices act on column coordinate vectors: column j is the image of basis vector j.
# Integers are decimal strings. kappa is \"+1\" (holomorphic) or \"-1\" (antiholomorphic).
";

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub kappa: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    #[serde(default)]
    pub comment: Option<String>,
    pub gram: Vec<Vec<String>>,
    #[serde(default)]
    pub generators: Vec<GeneratorEntry>,
}

/// Parses a canonical decimal integer.
pub fn parse_integer(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && !(s.starts_with('-') && digits == "0");
    if !canonical {
        return Err(Error::Parse(format!("not a canonical decimal integer: {s:?}")));
    }
    s.parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn parse_matrix(rows: &[Vec<String>], what: &str) -> Result<ZMatrix> {
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!("{what}: row {i} has {} entries, expected {n}", row.len())));
        }
        for x in row {
            data.push(parse_integer(x)?);
        }
    }
    Ok(ZMatrix::from_vec(n, n, data))
}

fn string_rows(m: &ZMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn write_matrix(out: &mut String, key: &str, rows: &[Vec<String>]) {
    let _ = writeln!(out, "{key} = [");
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("\"{x}\"")).collect();
        let _ = writeln!(out, "  [{}],", cells.join(", "));
    }
    out.push_str("]\n");
}

impl ActionFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))
    }

    pub fn from_action(a: &LatticeAction, comment: Option<&str>) -> Self {
        ActionFile {
            comment: comment.map(str::to_string),
            gram: string_rows(a.ambient().gram()),
            generators: a
                .generators()
                .iter()
                .map(|g| GeneratorEntry {
                    name: g.name.clone(),
                    kappa: if g.kappa == 1 { "+1" } else { "-1" }.to_string(),
                    matrix: string_rows(g.isometry.matrix()),
                })
                .collect(),
        }
    }

    pub fn to_action(&self) -> Result<LatticeAction> {
        let lattice = Lattice::new(parse_matrix(&self.gram, "gram")?)?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let kappa = match g.kappa.as_str() {
                "+1" => 1,
                "-1" => -1,
                other => return Err(Error::Parse(format!("generator {}: kappa {other:?}", g.name))),
            };
            gens.push((g.name.clone(), parse_matrix(&g.matrix, &g.name)?, kappa));
        }
        LatticeAction::new(lattice, gens)
    }

    pub fn to_toml(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        if let Some(c) = &self.comment {
            let _ = writeln!(out, "comment = {}", toml::Value::String(c.clone()));
        }
        write_matrix(&mut out, "gram", &self.gram);
        for g in &self.generators {
            out.push_str("\n[[generators]]\n");
            let _ = writeln!(out, "name = {}", toml::Value::String(g.name.clone()));
            let _ = writeln!(out, "kappa = \"{}\"", g.kappa);
            write_matrix(&mut out, "matrix", &g.matrix);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_actions::catalog::fixture;

    #[test]
    fn integers_are_canonical() {
        assert_eq!(parse_integer("-12").unwrap(), BigInt::from(-12));
        assert_eq!(parse_integer("0").unwrap(), BigInt::from(0));
        for bad in ["", "-", "01", "-0", "+1", "1.0", " 1", "1e3"] {
            assert!(parse_integer(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn fixture_round_trip() {
        let f = fixture("d3_S").unwrap();
        let file = ActionFile::from_action(&f.action, Some("d3_S"));
        let text = file.to_toml();
        let back = ActionFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_toml(), text);
        assert_eq!(back.to_action().unwrap(), f.action);
    }

    #[test]
    fn malformed_input() {
        assert!(ActionFile::parse("gram = [[\"1\", \"x\"]]").unwrap().to_action().is_err());
        assert!(ActionFile::parse("gram = [[\"0\"]]\nextra = 1").is_err());
        let ragged = "gram = [[\"0\", \"1\"], [\"1\"]]";
        assert!(ActionFile::parse(ragged).unwrap().to_action().is_err());
        let bad_kappa = "gram = [[\"-2\"]]\n[[generators]]\nname = \"g\"\nkappa = \"1\"\nmatrix = [[\"-1\"]]\n";
        assert!(ActionFile::parse(bad_kappa).unwrap().to_action().is_err());
    }
}
