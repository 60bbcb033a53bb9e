//! JSON state files.
//!
//! A mixed state is an object with `dim` and `matrix`, where `matrix` holds
//! `dim` rows of `dim` complex entries and each entry is a `[re, im]` pair:
//!
//! ```json
//! {"dim": 2, "matrix": [[[0.8, 0.0], [0.4, 0.0]], [[0.4, 0.0], [0.2, 0.0]]]}
//! ```
//!
//! A pure state uses `amplitudes` instead of `matrix`:
//!
//! ```json
//! {"dim": 3, "amplitudes": [[0.5773502691896258, 0.0], [0.5773502691896258, 0.0], [0.5773502691896258, 0.0]]}
//! ```
//!
//! Exactly one of `matrix` and `amplitudes` must be present.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{BlochQubit, DensityMatrix, PureState};

type Pair = [f64; 2];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    amplitudes: Option<Vec<Pair>>,
}

/// A state read from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Mixed(DensityMatrix),
    Pure(PureState),
}

impl LoadedState {
    pub fn dim(&self) -> usize {
        match self {
            LoadedState::Mixed(rho) => rho.dim(),
            LoadedState::Pure(phi) => phi.dim(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            LoadedState::Mixed(rho) => rho.clone(),
            LoadedState::Pure(phi) => phi.density(),
        }
    }
}

fn to_complex(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn to_pair(z: &Complex64) -> Pair {
    [z.re, z.im]
}

/// Parses a state document.
///
/// Malformed text and shape inconsistencies yield [`Error::Parse`]; states
/// that parse but fail validation yield the validation error.
pub fn parse_state(text: &str) -> Result<LoadedState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.dim == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    match (file.matrix, file.amplitudes) {
        (Some(rows), None) => {
            if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
                return Err(Error::Parse(format!(
                    "matrix must have {0} rows of {0} entries",
                    file.dim
                )));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(to_complex).collect())
                .collect();
            let m = ComplexMatrix::from_rows(rows)?;
            Ok(LoadedState::Mixed(DensityMatrix::new(m)?))
        }
        (None, Some(amps)) => {
            if amps.len() != file.dim {
                return Err(Error::Parse(format!(
                    "amplitudes must have {} entries, found {}",
                    file.dim,
                    amps.len()
                )));
            }
            Ok(LoadedState::Pure(PureState::new(
                amps.iter().map(to_complex).collect(),
            )?))
        }
        (Some(_), Some(_)) => Err(Error::Parse(
            "state file has both 'matrix' and 'amplitudes'".into(),
        )),
        (None, None) => Err(Error::Parse(
            "state file needs 'matrix' or 'amplitudes'".into(),
        )),
    }
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    let file = StateFile {
        dim: rho.dim(),
        matrix: Some(
            rho.matrix()
                .rows()
                .iter()
                .map(|r| r.iter().map(to_pair).collect())
                .collect(),
        ),
        amplitudes: None,
    };
    serde_json::to_string(&file).expect("plain data serializes")
}

pub fn pure_to_json(phi: &PureState) -> String {
    let file = StateFile {
        dim: phi.dim(),
        matrix: None,
        amplitudes: Some(phi.amplitudes().iter().map(to_pair).collect()),
    };
    serde_json::to_string(&file).expect("plain data serializes")
}

/// Parses the `t,z` qubit shorthand.
pub fn parse_bloch(spec: &str) -> Result<BlochQubit> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected 't,z', got '{spec}'")));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| Error::Parse(format!("bad number '{s}': {e}")))
    };
    BlochQubit::new(parse(parts[0])?, parse(parts[1])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::{reference_qubit_pair, reference_qutrit_pair};

    #[test]
    fn mixed_round_trip() {
        let (rho1, _) = reference_qubit_pair();
        let text = density_to_json(&rho1);
        assert_eq!(parse_state(&text).unwrap(), LoadedState::Mixed(rho1));
    }

    #[test]
    fn pure_round_trip() {
        let (phi1, _) = reference_qutrit_pair();
        let text = pure_to_json(&phi1);
        assert_eq!(parse_state(&text).unwrap(), LoadedState::Pure(phi1));
    }

    #[test]
    fn documented_examples_parse() {
        let mixed = r#"{"dim": 2, "matrix": [[[0.8, 0.0], [0.4, 0.0]], [[0.4, 0.0], [0.2, 0.0]]]}"#;
        assert_eq!(parse_state(mixed).unwrap().dim(), 2);
        let s = 1.0 / 3f64.sqrt();
        let pure = format!(r#"{{"dim": 3, "amplitudes": [[{s}, 0.0], [{s}, 0.0], [{s}, 0.0]]}}"#);
        assert!(matches!(parse_state(&pure).unwrap(), LoadedState::Pure(_)));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_state("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_state(r#"{"dim": 2}"#), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state(r#"{"dim": 2, "matrix": [[[1, 0]]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_state(r#"{"dim": 1, "amplitudes": [[1, 0]], "matrix": [[[1, 0]]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_state(r#"{"dim": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0.1, 0]]]}"#),
            Err(Error::BadTrace { .. })
        ));
    }

    #[test]
    fn bloch_shorthand() {
        let q = parse_bloch("0.8, 0.6").unwrap();
        assert_eq!((q.t(), q.z()), (0.8, 0.6));
        assert!(matches!(parse_bloch("0.8"), Err(Error::Parse(_))));
        assert!(matches!(parse_bloch("a,b"), Err(Error::Parse(_))));
        assert!(matches!(parse_bloch("0.9,0.9"), Err(Error::Domain(_))));
    }
}
