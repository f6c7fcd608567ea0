//! Seeded random states: Haar pure states, Ginibre-induced mixed states and
//! Haar unitaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::state::{CMatrix, CVector, DensityMatrix, PureState, C64};

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent substream `stream` of `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_pure_state_with<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<PureState> {
    let total: usize = dims.iter().product();
    let v = CVector::from_fn(total, |_, _| gaussian(rng));
    PureState::normalized(dims.to_vec(), v)
}

/// Haar-random pure state on `dims`.
pub fn random_pure_state(dims: &[usize], seed: u64) -> Result<PureState> {
    random_pure_state_with(&mut seeded_rng(seed), dims)
}

pub fn random_density_matrix_with<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &[usize],
    rank: usize,
) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if rank == 0 || rank > total {
        return Err(Error::InvalidRank { rank, dim: total });
    }
    let g = ginibre(rng, total, rank);
    let mut m = &g * g.adjoint();
    let tr = m.trace();
    m /= tr;
    // Remove rounding asymmetry so validation sees an exactly Hermitian matrix.
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityMatrix::new(m, dims.to_vec())
}

/// Mixed state `GG†/tr(GG†)` with `G` a `(∏dims) × rank` Ginibre matrix.
pub fn random_density_matrix(dims: &[usize], rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_matrix_with(&mut seeded_rng(seed), dims, rank)
}

/// Haar-random `d × d` unitary (QR of a Ginibre matrix with phase fixing).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let qr = ginibre(rng, d, d).qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..d {
        let diag = r[(k, k)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, k)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_state_is_normalized_and_deterministic() {
        let a = random_pure_state(&[2], 7).unwrap();
        assert!((a.amplitudes().norm() - 1.0).abs() < 1e-12);
        let b = random_pure_state(&[2], 7).unwrap();
        assert_eq!(a, b);
        let c = random_pure_state(&[2], 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn full_rank_qubit() {
        let rho = random_density_matrix(&[2], 2, 3).unwrap();
        assert_eq!(rho.rank(), 2);
        assert_eq!(rho, random_density_matrix(&[2], 2, 3).unwrap());
    }

    #[test]
    fn rank_is_respected() {
        let rho = random_density_matrix(&[2, 2, 2], 2, 11).unwrap();
        assert_eq!(rho.rank(), 2);
        assert!(matches!(
            random_density_matrix(&[2], 3, 0),
            Err(Error::InvalidRank { .. })
        ));
        assert!(random_density_matrix(&[2], 0, 0).is_err());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = seeded_rng(1);
        for d in 2..5 {
            let u = haar_unitary(&mut rng, d);
            assert!((u.adjoint() * &u - CMatrix::identity(d, d)).norm() < 1e-12);
        }
    }
}
