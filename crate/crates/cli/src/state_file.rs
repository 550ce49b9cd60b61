//! JSON state files: `{"matrix": [[..4]; 4]}` or `{"pauli": {"II": 1, "YY": 0.5, ..}}`.
//!
//! Other top-level keys are ignored, so a JSON report that carries a
//! `matrix` field can be fed back in as a state file.

use std::collections::BTreeMap;
use std::path::Path;

use rebit_core::{DensityOperator, PauliCoordinates, RealMatrix};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
struct RawStateFile {
    matrix: Option<Vec<Vec<f64>>>,
    pauli: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateFile {
    Matrix([[f64; 4]; 4]),
    Pauli(PauliCoordinates),
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawStateFile = serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("invalid state file: {e}")))?;
        match (raw.matrix, raw.pauli) {
            (Some(rows), None) => parse_matrix(&rows).map(StateFile::Matrix),
            (None, Some(labels)) => parse_pauli(&labels).map(StateFile::Pauli),
            (Some(_), Some(_)) => Err(CliError::Parse(
                "state file has both \"matrix\" and \"pauli\"; give exactly one".into(),
            )),
            (None, None) => Err(CliError::Parse(
                "state file needs a \"matrix\" or a \"pauli\" key".into(),
            )),
        }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_density(&self) -> Result<DensityOperator, CliError> {
        let rho = match self {
            StateFile::Matrix(rows) => DensityOperator::from_rows(*rows),
            StateFile::Pauli(coords) => rebit_core::from_pauli(coords),
        };
        rho.map_err(CliError::Invalid)
    }
}

fn parse_matrix(rows: &[Vec<f64>]) -> Result<[[f64; 4]; 4], CliError> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(CliError::Parse(format!(
            "\"matrix\" must be 4x4, got row lengths {:?}",
            rows.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    // reject NaN/Inf before validation; JSON cannot spell them but be explicit
    RealMatrix::from_nested(rows).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut out = [[0.0; 4]; 4];
    for (dst, src) in out.iter_mut().zip(rows) {
        dst.copy_from_slice(src);
    }
    Ok(out)
}

fn parse_pauli(labels: &BTreeMap<String, f64>) -> Result<PauliCoordinates, CliError> {
    let mut coords = PauliCoordinates {
        sym: [[0.0; 3]; 3],
        anti: 0.0,
    };
    for (label, &value) in labels {
        coords.set_by_label(label, value).ok_or_else(|| {
            CliError::Parse(format!(
                "Pauli label {label:?} is not one of the real symmetric labels {}",
                PauliCoordinates::labels().collect::<Vec<_>>().join(", ")
            ))
        })?;
    }
    Ok(coords)
}
