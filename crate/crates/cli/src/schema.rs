//! Input format: a versioned wrapper around a K-theory datum.
//!
//! ```json
//! {"schema": 1,
//!  "datum": {"n": 1,
//!            "even": {"free_rank": 1, "relations": []},
//!            "odd":  {"free_rank": 1, "relations": []},
//!            "endos": [{"even": [[1]], "odd": [[1]]}]}}
//! ```
//!
//! `free_rank` is the number of generators; each entry of `relations` is one
//! relation vector in generator coordinates. Endomorphism matrices are
//! row-major and act on column vectors, so column j is the image of
//! generator j. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use pv_core::abgroup::{IntMatrix, PresentedGroup};
use pv_core::koszul::{GradedEndo, ModuleDatum};
use pv_core::{Error as CoreError, Parity};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    pub schema: u32,
    pub datum: DatumJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub n: usize,
    pub even: GroupJson,
    pub odd: GroupJson,
    pub endos: Vec<EndoJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub free_rank: usize,
    pub relations: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoJson {
    pub even: Vec<Vec<i64>>,
    pub odd: Vec<Vec<i64>>,
}

/// Parses and validates; diagnostics name the offending field by path.
pub fn parse_input(text: &str) -> Result<ModuleDatum, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let input: Input = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            CliError::Input(e.inner().to_string())
        } else {
            CliError::Input(format!("{path}: {}", e.inner()))
        }
    })?;
    if input.schema != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "schema: unsupported version {}, expected {SCHEMA_VERSION}",
            input.schema
        )));
    }
    input.datum.to_datum()
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

impl GroupJson {
    fn to_presented(&self, path: &str) -> Result<PresentedGroup, CliError> {
        let g = self.free_rank;
        for (i, r) in self.relations.iter().enumerate() {
            if r.len() != g {
                return Err(CliError::Input(format!(
                    "{path}.relations[{i}]: expected {g} entries, got {}",
                    r.len()
                )));
            }
        }
        let columns: Vec<Vec<num_bigint::BigInt>> = self
            .relations
            .iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect();
        Ok(PresentedGroup::new(IntMatrix::from_columns(g, &columns)))
    }
}

fn square(rows: &[Vec<i64>], g: usize, path: &str) -> Result<IntMatrix, CliError> {
    let bad = || CliError::Input(format!("{path}: expected a {g}x{g} matrix"));
    if rows.len() != g || rows.iter().any(|r| r.len() != g) {
        return Err(bad());
    }
    IntMatrix::from_rows(g, rows).map_err(|_| bad())
}

impl DatumJson {
    pub fn to_datum(&self) -> Result<ModuleDatum, CliError> {
        if self.n != self.endos.len() {
            return Err(CliError::Input(format!(
                "datum.n: {} does not match the {} entries of datum.endos",
                self.n,
                self.endos.len()
            )));
        }
        let even = self.even.to_presented("datum.even")?;
        let odd = self.odd.to_presented("datum.odd")?;
        let endos = self
            .endos
            .iter()
            .enumerate()
            .map(|(i, e)| {
                Ok(GradedEndo::new(
                    square(&e.even, even.generators(), &format!("datum.endos[{i}].even"))?,
                    square(&e.odd, odd.generators(), &format!("datum.endos[{i}].odd"))?,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        ModuleDatum::new(even, odd, endos).map_err(|e| match e {
            CoreError::IllDefined { index, parity } => CliError::Input(format!(
                "datum.endos[{index}].{}: does not preserve the relations",
                parity_name(parity)
            )),
            CoreError::NonCommuting { first, second, parity } => CliError::Input(format!(
                "datum.endos: endomorphisms {first} and {second} do not commute on the {} group",
                parity_name(parity)
            )),
            other => CliError::Input(format!("datum: {other}")),
        })
    }

    /// Inverse of [`DatumJson::to_datum`] on generator data.
    pub fn from_datum(d: &ModuleDatum) -> Self {
        let group = |p: Parity| {
            let g = d.presentation(p);
            GroupJson {
                free_rank: g.generators(),
                relations: (0..g.relations().cols())
                    .map(|j| g.relations().column(j).iter().map(to_i64).collect())
                    .collect(),
            }
        };
        let rows = |m: &IntMatrix| m.to_rows().iter().map(|r| r.iter().map(to_i64).collect()).collect();
        DatumJson {
            n: d.n(),
            even: group(Parity::Even),
            odd: group(Parity::Odd),
            endos: d
                .endos()
                .iter()
                .map(|e| EndoJson {
                    even: rows(&e.even),
                    odd: rows(&e.odd),
                })
                .collect(),
        }
    }
}

fn to_i64(x: &num_bigint::BigInt) -> i64 {
    i64::try_from(x).expect("entry fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROTATION: &str = r#"{"schema":1,"datum":{"n":1,
        "even":{"free_rank":1,"relations":[]},
        "odd":{"free_rank":1,"relations":[]},
        "endos":[{"even":[[1]],"odd":[[1]]}]}}"#;

    fn err(text: &str) -> String {
        parse_input(text).unwrap_err().to_string()
    }

    #[test]
    fn parses_rotation() {
        let d = parse_input(ROTATION).unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.group().to_string(), "{even: Z, odd: Z}");
    }

    #[test]
    fn relations_are_vectors() {
        let text = r#"{"schema":1,"datum":{"n":0,
            "even":{"free_rank":2,"relations":[[2,0],[0,3]]},
            "odd":{"free_rank":0,"relations":[]},"endos":[]}}"#;
        assert_eq!(parse_input(text).unwrap().group().even.to_string(), "Z/6");
    }

    #[test]
    fn diagnostics_name_fields() {
        assert!(err(&ROTATION.replace("\"n\":1", "\"n\":1,\"m\":2")).contains("unknown field `m`"));
        assert!(err(&ROTATION.replace("\"n\":1,", "")).contains("missing field `n`"));
        assert!(err(&ROTATION.replace("[[1]],\"odd\"", "[[\"x\"]],\"odd\"")).starts_with("datum.endos[0].even"));
        assert!(err(&ROTATION.replace("\"schema\":1", "\"schema\":2")).starts_with("schema:"));
        assert!(err(&ROTATION.replace("\"n\":1", "\"n\":2")).starts_with("datum.n:"));
        assert!(err(&ROTATION.replace("\"odd\":[[1]]", "\"odd\":[[1,0]]")).starts_with("datum.endos[0].odd"));
        assert!(err("{").contains("EOF"));
    }

    #[test]
    fn semantic_errors() {
        let noncommuting = r#"{"schema":1,"datum":{"n":2,
            "even":{"free_rank":2,"relations":[]},
            "odd":{"free_rank":0,"relations":[]},
            "endos":[{"even":[[0,1],[1,0]],"odd":[]},{"even":[[1,1],[0,1]],"odd":[]}]}}"#;
        assert!(err(noncommuting).contains("do not commute on the even group"));
        let ill = r#"{"schema":1,"datum":{"n":1,
            "even":{"free_rank":2,"relations":[[3,0]]},
            "odd":{"free_rank":0,"relations":[]},
            "endos":[{"even":[[1,0],[1,1]],"odd":[]}]}}"#;
        assert!(err(ill).starts_with("datum.endos[0].even: does not preserve"));
        let short = r#"{"schema":1,"datum":{"n":0,
            "even":{"free_rank":2,"relations":[[3]]},
            "odd":{"free_rank":0,"relations":[]},"endos":[]}}"#;
        assert!(err(short).starts_with("datum.even.relations[0]"));
    }

    #[test]
    fn round_trip() {
        let d = parse_input(ROTATION).unwrap();
        let json = DatumJson::from_datum(&d);
        assert_eq!(json.to_datum().unwrap(), d);
    }
}
