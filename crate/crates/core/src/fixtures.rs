//! Named example states shipped in `fixtures/`. The files are produced by
//! [`write_fixtures`] and checked against it in the test suite.

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::hardy::{build_xstate, XStateParams};
use crate::io::{state_to_json, StateFile};
use crate::state::{CMatrix, CVector, DensityMatrix, PureState, C64};
use crate::uio::convert;

/// `p|0><0| + r(|0><1| + |1><0|) + (1-p)|1><1|`.
pub fn qubit_state(p: f64, r: f64) -> Result<DensityMatrix> {
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[C64::new(p, 0.0), C64::new(r, 0.0), C64::new(r, 0.0), C64::new(1.0 - p, 0.0)],
    );
    DensityMatrix::new(m, vec![2])
}

pub fn plus() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new(vec![2], CVector::from_vec(vec![C64::new(h, 0.0), C64::new(h, 0.0)]))
        .expect("normalized")
}

/// `(name, contents)` for every fixture, in a fixed order.
pub fn fixture_states() -> Result<Vec<(&'static str, StateFile)>> {
    let eq11 = qubit_state(0.5, 0.4)?;
    let eq12 = build_xstate(XStateParams::new(0.5, 0.4)?)?;
    debug_assert!((convert(&eq11, 3)?.matrix() - eq12.matrix()).norm() < 1e-15);
    Ok(vec![
        ("plus.json", StateFile::Pure(plus())),
        ("ghz3.json", StateFile::Pure(PureState::ghz(3))),
        ("eq11_r04.json", StateFile::Mixed(eq11)),
        ("eq12_r04.json", StateFile::Mixed(eq12)),
        ("diag.json", StateFile::Mixed(DensityMatrix::diagonal(vec![2], &[0.6, 0.4])?)),
    ])
}

/// File contents, newline-terminated.
pub fn fixture_text(state: &StateFile) -> String {
    state_to_json(state) + "\n"
}

/// Writes every fixture into `dir`, creating it if needed.
pub fn write_fixtures(dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, state) in fixture_states()? {
        fs::write(dir.join(name), fixture_text(&state))?;
        written.push(name.to_string());
    }
    Ok(written)
}
