use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, HermitianMatrix, SubsystemDims, C64};
use crate::error::{Error, Result};

/// JSON form of a Hermitian operator with its tensor factorization.
///
/// ```json
/// {"dim": 2, "dims": [2], "entries": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub dims: Vec<usize>,
    /// Row-major `[re, im]` pairs.
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &HermitianMatrix, dims: &SubsystemDims) -> Self {
        Self {
            dim: m.dim(),
            dims: dims.as_slice().to_vec(),
            entries: m
                .as_matrix()
                .as_slice()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
        }
    }

    pub fn into_matrix(self) -> Result<(HermitianMatrix, SubsystemDims)> {
        let dims = SubsystemDims::new(self.dims)?;
        dims.check_matches(self.dim)?;
        let data = self
            .entries
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        let m = ComplexMatrix::from_vec(self.dim, self.dim, data)?;
        Ok((HermitianMatrix::new(m)?, dims))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"dim": 2, "dims": [2], "entries": [[0.5, 0.0], [0.0, 0.25], [0.0, -0.25], [0.5, 0.0]]}"#;
        let file = MatrixFile::from_json(text).unwrap();
        let (m, dims) = file.clone().into_matrix().unwrap();
        assert_eq!(m[(0, 1)], C64::new(0.0, 0.25));
        assert_eq!(MatrixFile::from_matrix(&m, &dims), file);
        assert!(MatrixFile::from_json(r#"{"dim": 2}"#).is_err());
        let wrong = MatrixFile {
            dim: 2,
            dims: vec![3],
            entries: vec![[0.0, 0.0]; 4],
        };
        assert!(wrong.into_matrix().is_err());
    }
}
