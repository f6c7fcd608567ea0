#![allow(dead_code)]

use gme_coherence::hardy::PartyAngles;
use gme_coherence::random::{haar_unitary, seeded_rng};
use gme_coherence::state::{CMatrix, DensityMatrix, PureState, C64};

/// Schmidt coefficients from the singular values of the amplitude tensor
/// reshaped as (parties in `gamma`) × (the rest), sorted descending.
pub fn schmidt_by_svd(psi: &PureState, gamma: &[usize]) -> Vec<f64> {
    let dims = psi.dims();
    let n = dims.len();
    let rest: Vec<usize> = (1..=n).filter(|k| !gamma.contains(k)).collect();
    let rows: usize = gamma.iter().map(|&k| dims[k - 1]).product();
    let cols: usize = rest.iter().map(|&k| dims[k - 1]).product();
    let mut m = CMatrix::zeros(rows, cols);
    for (idx, amp) in psi.amplitudes().iter().enumerate() {
        let mut digits = vec![0; n];
        let mut rem = idx;
        for k in (0..n).rev() {
            digits[k] = rem % dims[k];
            rem /= dims[k];
        }
        let fold = |parties: &[usize]| parties.iter().fold(0, |acc, &k| acc * dims[k - 1] + digits[k - 1]);
        m[(fold(gamma), fold(&rest))] = *amp;
    }
    let mut s: Vec<f64> = m.singular_values().iter().map(|x| x * x).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Compares two spectra as multisets, padding the shorter with zeros.
pub fn spectra_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let (a, b) = (sorted_desc(a.to_vec()), sorted_desc(b.to_vec()));
    let n = a.len().max(b.len());
    (0..n).all(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs() <= tol)
}

/// Applies an independent Haar unitary to every party.
pub fn random_local_unitaries(psi: &PureState, seed: u64) -> PureState {
    let mut rng = seeded_rng(seed);
    let mut out = psi.clone();
    for (k, &d) in psi.dims().iter().enumerate() {
        out = out.apply_local(k + 1, &haar_unitary(&mut rng, d)).unwrap();
    }
    out
}

/// Σ_{i≠j} |ρ_ij| written out directly.
pub fn l1_direct(m: &CMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                acc += m[(i, j)].norm();
            }
        }
    }
    acc
}

/// Probability of `outcomes` under `settings` for a three-qubit state,
/// computed with explicit measurement vectors and a sum over amplitudes of
/// `ρ` in the product basis (no matrix products).
pub fn born_probability(rho: &DensityMatrix, angles: &PartyAngles, outcomes: [usize; 3], settings: [usize; 3]) -> f64 {
    let vec_for = |k: usize| -> [f64; 2] {
        let t = if settings[k] == 0 { angles[k].0 } else { angles[k].1 };
        if outcomes[k] == 0 {
            [t.cos(), t.sin()]
        } else {
            [t.sin(), -t.cos()]
        }
    };
    let (a, b, c) = (vec_for(0), vec_for(1), vec_for(2));
    let amp = |idx: usize| a[(idx >> 2) & 1] * b[(idx >> 1) & 1] * c[idx & 1];
    let m = rho.matrix();
    let mut p = C64::new(0.0, 0.0);
    for i in 0..8 {
        for j in 0..8 {
            p += m[(i, j)] * amp(i) * amp(j);
        }
    }
    p.re
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
