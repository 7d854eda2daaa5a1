//! Matrix file format: a JSON document with `dim`, row-major `entries` as
//! `[re, im]` pairs, and an optional `kind` tag used by state and
//! Hamiltonian files.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, kind: Option<&str>) -> Self {
        Self {
            kind: kind.map(str::to_owned),
            dim: m.dim(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let data = self
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(self.dim, data)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string_precise(self).expect("matrix file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Format(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path.as_ref(), self.to_json())
            .map_err(|e| Error::Format(format!("{}: {e}", path.as_ref().display())))
    }

    /// Checks the `kind` tag, accepting untagged files.
    pub fn expect_kind(&self, kind: &str) -> Result<()> {
        match &self.kind {
            Some(k) if k != kind => Err(Error::Format(format!("expected kind {kind:?}, found {k:?}"))),
            _ => Ok(()),
        }
    }
}
