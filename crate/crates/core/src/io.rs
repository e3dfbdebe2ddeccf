//! JSON input formats for ideals, simplicial complexes and point bases.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

/// `{"vars": d, "generators": [[...], ...]}`. Other keys are ignored, so
/// `closure` reports can be fed back in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: usize,
    pub generators: Vec<Vec<u32>>,
}

impl IdealJson {
    /// Minimalizes and checks that the ideal is m-primary.
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        if self.vars == 0 {
            return Err(Error::ZeroDimension);
        }
        for row in &self.generators {
            if row.len() != self.vars {
                return Err(Error::DimensionMismatch {
                    expected: self.vars,
                    found: row.len(),
                });
            }
        }
        let ideal = MonomialIdeal::from_rows(&self.generators)?;
        ideal.pure_bounds()?;
        Ok(ideal)
    }
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(ideal: &MonomialIdeal) -> Self {
        IdealJson {
            vars: ideal.dim(),
            generators: ideal.rows(),
        }
    }
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    serde_json::from_str::<IdealJson>(text)?.to_ideal()
}

pub fn read_ideal(path: impl AsRef<Path>) -> Result<MonomialIdeal> {
    parse_ideal(&fs::read_to_string(path)?)
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> String {
    serde_json::to_string(&IdealJson::from(ideal)).expect("ideal serializes")
}

/// `{"vertices": n, "facets": [[1,2],[3]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

/// `{"basis": [[o, d], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub basis: Vec<(u64, u64)>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimalizes() {
        let ideal = parse_ideal(r#"{"vars": 2, "generators": [[0,3],[2,0],[2,1],[3,3]]}"#).unwrap();
        assert_eq!(ideal.rows(), vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(
            ideal_to_json(&ideal),
            r#"{"vars":2,"generators":[[2,0],[0,3]]}"#
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_ideal("{"), Err(Error::Json(_))));
        assert!(matches!(
            parse_ideal(r#"{"vars": 2, "generators": [[1,2,3]]}"#),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
        assert!(matches!(
            parse_ideal(r#"{"vars": 2, "generators": [[2,0],[1,1]]}"#),
            Err(Error::NotMPrimary { variable: 1 })
        ));
        assert!(matches!(
            parse_ideal(r#"{"vars": 2, "generators": []}"#),
            Err(Error::EmptyGenerators)
        ));
        assert!(matches!(
            parse_ideal(r#"{"vars": 2, "generators": [[-1,0]]}"#),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn round_trip() {
        let text =
            r#"{"vars":3,"generators":[[3,0,0],[2,1,0],[1,2,0],[1,1,1],[0,3,0],[0,1,2],[0,0,3]]}"#;
        let ideal = parse_ideal(text).unwrap();
        assert_eq!(ideal_to_json(&ideal), text);
    }
}
