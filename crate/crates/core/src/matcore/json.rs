//! Matrix JSON: `{"n": <int>, "entries": [[re, im], ...]}`, row-major.

use serde::{Deserialize, Serialize};

use super::{CMatrix, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        MatrixJson {
            n: m.dim(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let data = j.entries.iter().map(|e| C64::new(e[0], e[1])).collect();
        CMatrix::from_row_major(j.n, data)
    }
}

impl CMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix JSON is always serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: MatrixJson =
            serde_json::from_str(s).map_err(|e| Error::invalid(format!("matrix JSON: {e}")))?;
        CMatrix::try_from(j)
    }
}

impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        CMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let m = CMatrix::from_json(r#"{"n":2,"entries":[[1,0],[0,2],[0,0],[-1,0.5]]}"#).unwrap();
        assert_eq!(m[(0, 1)], C64::new(0.0, 2.0));
        assert_eq!(m[(1, 1)], C64::new(-1.0, 0.5));
        assert!(CMatrix::from_json(r#"{"n":2,"entries":[[1,0],[0,2],[0,0]]}"#).is_err());
        assert!(CMatrix::from_json(r#"{"n":1,"entries":[[1e400,0]]}"#).is_err());
        assert!(CMatrix::from_json(r#"{"n":1}"#).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(0.1, -1.0 / 3.0), C64::new(1e-300, 7.25)],
            vec![C64::new(-2.5e17, 0.0), C64::new(std::f64::consts::PI, -0.0)],
        ]);
        let back = CMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
