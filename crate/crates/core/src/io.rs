//! JSON state files.
//!
//! Density matrices: `{"dims":[2,2],"matrix_re":[[..]],"matrix_im":[[..]]}`,
//! rows in order. Pure states: `{"dims":[2],"amp_re":[..],"amp_im":[..]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{CMatrix, CVector, DensityMatrix, PureState, C64};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    dims: Vec<usize>,
    matrix_re: Vec<Vec<f64>>,
    matrix_im: Vec<Vec<f64>>,
}

/// Serialized form of a pure state.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PureJson {
    pub dims: Vec<usize>,
    pub amp_re: Vec<f64>,
    pub amp_im: Vec<f64>,
}

impl From<&PureState> for PureJson {
    fn from(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        Self {
            dims: psi.dims().to_vec(),
            amp_re: a.iter().map(|z| z.re).collect(),
            amp_im: a.iter().map(|z| z.im).collect(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AnyJson {
    Pure(PureJson),
    Mixed(MatrixJson),
}

/// Contents of a state file.
#[derive(Debug, Clone)]
pub enum StateFile {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl StateFile {
    pub fn dims(&self) -> &[usize] {
        match self {
            StateFile::Pure(psi) => psi.dims(),
            StateFile::Mixed(rho) => rho.dims(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            StateFile::Pure(psi) => psi.to_density(),
            StateFile::Mixed(rho) => rho.clone(),
        }
    }

    /// The pure state, when the file holds one or the matrix has rank one.
    pub fn as_pure(&self) -> Option<PureState> {
        match self {
            StateFile::Pure(psi) => Some(psi.clone()),
            StateFile::Mixed(rho) => rho.as_pure(),
        }
    }
}

fn pure_from_json(j: PureJson) -> Result<PureState> {
    if j.amp_re.len() != j.amp_im.len() {
        return Err(Error::DimensionMismatch(format!(
            "amp_re has {} entries, amp_im has {}",
            j.amp_re.len(),
            j.amp_im.len()
        )));
    }
    let amps = CVector::from_iterator(
        j.amp_re.len(),
        j.amp_re.iter().zip(&j.amp_im).map(|(re, im)| C64::new(*re, *im)),
    );
    PureState::new(j.dims, amps)
}

fn matrix_from_json(j: MatrixJson) -> Result<DensityMatrix> {
    let n = j.matrix_re.len();
    let rectangular = |rows: &[Vec<f64>]| rows.len() == n && rows.iter().all(|r| r.len() == n);
    if !rectangular(&j.matrix_re) || !rectangular(&j.matrix_im) {
        return Err(Error::DimensionMismatch(
            "matrix_re and matrix_im must be square arrays of the same size".into(),
        ));
    }
    let m = CMatrix::from_fn(n, n, |i, k| C64::new(j.matrix_re[i][k], j.matrix_im[i][k]));
    DensityMatrix::new(m, j.dims)
}

pub fn parse_state(text: &str) -> Result<StateFile> {
    match serde_json::from_str::<AnyJson>(text)? {
        AnyJson::Pure(j) => Ok(StateFile::Pure(pure_from_json(j)?)),
        AnyJson::Mixed(j) => Ok(StateFile::Mixed(matrix_from_json(j)?)),
    }
}

pub fn read_state(path: &Path) -> Result<StateFile> {
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_state(&text)
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|k| f(&m[(i, k)])).collect())
            .collect()
    };
    let j = MatrixJson {
        dims: rho.dims().to_vec(),
        matrix_re: rows(|z| z.re),
        matrix_im: rows(|z| z.im),
    };
    serde_json::to_string(&j).expect("plain numbers serialize")
}

pub fn pure_to_json(psi: &PureState) -> String {
    serde_json::to_string(&PureJson::from(psi)).expect("plain numbers serialize")
}

pub fn state_to_json(state: &StateFile) -> String {
    match state {
        StateFile::Pure(psi) => pure_to_json(psi),
        StateFile::Mixed(rho) => density_to_json(rho),
    }
}

pub fn write_state(path: &Path, state: &StateFile) -> Result<()> {
    fs::write(path, state_to_json(state) + "\n")?;
    Ok(())
}
