//! Pure and mixed states over a list of subsystem dimensions, together with
//! the tensor algebra the measures need: Kronecker products, partial traces,
//! bipartitions and Schmidt vectors.
//!
//! Parties are numbered `1..=N`. Basis indices are big-endian: party 1 is the
//! most significant digit, so `|j1 j2 ... jN>` sits at
//! `j1 * d2 * ... * dN + ... + jN`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Validation tolerance shared by every state constructor.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Eigenvalues below this are treated as numerical zeros.
pub const EIGEN_FLOOR: f64 = 1e-12;

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::DimensionMismatch("empty dimension list".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimension {d} is below 2"
        )));
    }
    Ok(dims.iter().product())
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: CVector,
}

impl PureState {
    pub fn new(dims: Vec<usize>, amplitudes: CVector) -> Result<Self> {
        let total = check_dims(&dims)?;
        if amplitudes.len() != total {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for total dimension {total}",
                amplitudes.len()
            )));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Normalizes `amplitudes` before validating.
    pub fn normalized(dims: Vec<usize>, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(dims, amplitudes / C64::new(norm, 0.0))
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(dims: Vec<usize>, amplitudes: CVector) -> Self {
        Self { dims, amplitudes }
    }

    /// Computational basis state `|index>`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total = check_dims(&dims)?;
        if index >= total {
            return Err(Error::IndexOutOfRange {
                index,
                limit: total,
            });
        }
        let mut amps = CVector::zeros(total);
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self::from_parts(dims, amps))
    }

    /// `(|0...0> + |1...1>)/sqrt(2)` on `n` qubits.
    pub fn ghz(n: usize) -> Self {
        let total = 1usize << n;
        let mut amps = CVector::zeros(total);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        amps[0] = C64::new(h, 0.0);
        amps[total - 1] = C64::new(h, 0.0);
        Self::from_parts(vec![2; n], amps)
    }

    /// Equal superposition of the `n` single-excitation qubit basis states.
    pub fn w(n: usize) -> Self {
        let total = 1usize << n;
        let mut amps = CVector::zeros(total);
        let a = 1.0 / (n as f64).sqrt();
        for k in 0..n {
            amps[1 << k] = C64::new(a, 0.0);
        }
        Self::from_parts(vec![2; n], amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_parts(
            self.dims.clone(),
            &self.amplitudes * self.amplitudes.adjoint(),
        )
    }

    /// `self ⊗ other`, with the dimension lists concatenated.
    pub fn kron(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::from_parts(dims, self.amplitudes.kronecker(&other.amplitudes))
    }

    /// Applies `u` to a single party (1-based).
    pub fn apply_local(&self, party: usize, u: &CMatrix) -> Result<PureState> {
        let n = self.dims.len();
        if party == 0 || party > n {
            return Err(Error::IndexOutOfRange {
                index: party,
                limit: n,
            });
        }
        let d = self.dims[party - 1];
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "local operator is {}x{} but party {party} has dimension {d}",
                u.nrows(),
                u.ncols()
            )));
        }
        let inner: usize = self.dims[party..].iter().product();
        let outer: usize = self.dims[..party - 1].iter().product();
        let mut out = CVector::zeros(self.dim());
        for o in 0..outer {
            for i in 0..inner {
                for a in 0..d {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..d {
                        acc += u[(a, b)] * self.amplitudes[(o * d + b) * inner + i];
                    }
                    out[(o * d + a) * inner + i] = acc;
                }
            }
        }
        Ok(Self::from_parts(self.dims.clone(), out))
    }
}

/// A validated density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: CMatrix,
}

/// Validates `m` as a density matrix on `dims`. Never repairs its input.
pub fn validate_density_matrix(m: CMatrix, dims: Vec<usize>) -> Result<DensityMatrix> {
    let total = check_dims(&dims)?;
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() != total {
        return Err(Error::DimensionMismatch(format!(
            "matrix side {} does not match product of dims {total}",
            m.nrows()
        )));
    }
    let herm_dev = (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if herm_dev > VALIDATION_TOL {
        return Err(Error::NotHermitian(herm_dev));
    }
    let min_eig = hermitian_eigenvalues(&m)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if min_eig < -VALIDATION_TOL {
        return Err(Error::NotPositive(min_eig));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > VALIDATION_TOL || tr.im.abs() > VALIDATION_TOL {
        return Err(Error::TraceNotOne(tr.re));
    }
    Ok(DensityMatrix { dims, matrix: m })
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix, dims: Vec<usize>) -> Result<Self> {
        validate_density_matrix(matrix, dims)
    }

    pub(crate) fn from_parts(dims: Vec<usize>, matrix: CMatrix) -> Self {
        Self { dims, matrix }
    }

    /// `I/d` on `dims`.
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        let m = CMatrix::identity(total, total) / C64::new(total as f64, 0.0);
        Ok(Self::from_parts(dims, m))
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(dims: Vec<usize>, populations: &[f64]) -> Result<Self> {
        let m = CMatrix::from_diagonal(&CVector::from_iterator(
            populations.len(),
            populations.iter().map(|&p| C64::new(p, 0.0)),
        ));
        validate_density_matrix(m, dims)
    }

    /// Convex mixture `sum_j w_j rho_j`; all components must share dims.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::DimensionMismatch("empty mixture".into()));
        };
        let n = first.dim();
        let mut m = CMatrix::zeros(n, n);
        for (w, rho) in parts {
            if rho.dims != first.dims {
                return Err(Error::DimensionMismatch(
                    "mixture components have different dims".into(),
                ));
            }
            m += &rho.matrix * C64::new(*w, 0.0);
        }
        validate_density_matrix(m, first.dims.clone())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Eigenpairs sorted by descending eigenvalue.
    pub fn eigen(&self) -> (Vec<f64>, Vec<CVector>) {
        let eig = self.matrix.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).into_owned())
            .collect();
        (values, vectors)
    }

    /// Number of eigenvalues above [`EIGEN_FLOOR`].
    pub fn rank(&self) -> usize {
        hermitian_eigenvalues(&self.matrix)
            .into_iter()
            .filter(|&l| l > EIGEN_FLOOR)
            .count()
    }

    /// Returns the pure state if the matrix has rank one.
    pub fn as_pure(&self) -> Option<PureState> {
        let (values, vectors) = self.eigen();
        if values.iter().skip(1).any(|&l| l > EIGEN_FLOOR) {
            return None;
        }
        PureState::normalized(self.dims.clone(), vectors[0].clone()).ok()
    }

    pub fn frobenius_distance(&self, other: &CMatrix) -> f64 {
        (&self.matrix - other).norm()
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        psi.to_density()
    }
}

/// Kronecker product with dims concatenated.
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    DensityMatrix::from_parts(dims, a.matrix.kronecker(&b.matrix))
}

fn check_party_set(parties: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut set = parties.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            limit: n,
        });
    }
    Ok(set)
}

/// Index maps splitting a full basis index into `(kept, traced)` parts.
fn split_maps(dims: &[usize], kept: &[usize]) -> (Vec<usize>, Vec<usize>, usize, usize) {
    let n = dims.len();
    let total: usize = dims.iter().product();
    let in_kept: Vec<bool> = (1..=n).map(|k| kept.contains(&k)).collect();
    let d_keep: usize = (0..n).filter(|&k| in_kept[k]).map(|k| dims[k]).product();
    let d_rest = total / d_keep;
    let mut keep_idx = vec![0usize; total];
    let mut rest_idx = vec![0usize; total];
    let mut digits = vec![0usize; n];
    for idx in 0..total {
        let mut r = idx;
        for k in (0..n).rev() {
            digits[k] = r % dims[k];
            r /= dims[k];
        }
        let (mut a, mut b) = (0usize, 0usize);
        for k in 0..n {
            if in_kept[k] {
                a = a * dims[k] + digits[k];
            } else {
                b = b * dims[k] + digits[k];
            }
        }
        keep_idx[idx] = a;
        rest_idx[idx] = b;
    }
    (keep_idx, rest_idx, d_keep, d_rest)
}

/// Reduced state on the parties in `keep` (1-based).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let kept = check_party_set(keep, rho.n_parties())?;
    let (keep_idx, rest_idx, d_keep, _) = split_maps(&rho.dims, &kept);
    let total = rho.dim();
    let mut out = CMatrix::zeros(d_keep, d_keep);
    for i in 0..total {
        for j in 0..total {
            if rest_idx[i] == rest_idx[j] {
                out[(keep_idx[i], keep_idx[j])] += rho.matrix[(i, j)];
            }
        }
    }
    let dims = kept.iter().map(|&k| rho.dims[k - 1]).collect();
    Ok(DensityMatrix::from_parts(dims, out))
}

/// An unordered split `γ|γ̄` of the parties, stored with party 1 in `γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    gamma: Vec<usize>,
    n_parties: usize,
}

impl Bipartition {
    /// Canonicalizes: if `gamma` lacks party 1, its complement is stored.
    pub fn new(gamma: &[usize], n_parties: usize) -> Result<Self> {
        if n_parties < 2 {
            return Err(Error::TooFewParties(n_parties));
        }
        let set = check_party_set(gamma, n_parties)?;
        if set.is_empty() || set.len() == n_parties {
            return Err(Error::InvalidBipartition(format!(
                "{set:?} is not a nonempty proper subset of 1..={n_parties}"
            )));
        }
        let gamma = if set[0] == 1 {
            set
        } else {
            (1..=n_parties).filter(|k| !set.contains(k)).collect()
        };
        Ok(Self { gamma, n_parties })
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n_parties)
            .filter(|k| !self.gamma.contains(k))
            .collect()
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    /// Dimensions of the two sides, `(dim γ, dim γ̄)`.
    pub fn side_dims(&self, dims: &[usize]) -> (usize, usize) {
        let a: usize = self.gamma.iter().map(|&k| dims[k - 1]).product();
        let total: usize = dims.iter().product();
        (a, total / a)
    }

    /// Dimension of the smaller side.
    pub fn d_min(&self, dims: &[usize]) -> usize {
        let (a, b) = self.side_dims(dims);
        a.min(b)
    }

    /// Precomputed index layout for repeated Schmidt evaluations.
    pub fn layout(&self, dims: &[usize]) -> Result<SplitLayout> {
        if dims.len() != self.n_parties {
            return Err(Error::DimensionMismatch(format!(
                "bipartition of {} parties applied to {} subsystems",
                self.n_parties,
                dims.len()
            )));
        }
        let (row, col, d_gamma, d_rest) = split_maps(dims, &self.gamma);
        Ok(SplitLayout {
            row,
            col,
            d_gamma,
            d_rest,
        })
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[usize]| v.iter().map(|k| k.to_string()).collect::<String>();
        write!(f, "{}|{}", join(&self.gamma), join(&self.complement()))
    }
}

/// All canonical bipartitions of `n` parties, `2^(n-1) - 1` of them.
///
/// Order: `γ = {1} ∪ S` where `S ⊆ {2..n}` is read as a bitmask (party 2 is
/// the lowest bit), ascending. For `n = 3` this is `1|23, 12|3, 13|2`.
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if n < 2 {
        return Err(Error::TooFewParties(n));
    }
    if n > 30 {
        return Err(Error::InvalidConfig(format!("{n} parties is too many")));
    }
    let full = (1usize << (n - 1)) - 1;
    Ok((0..full)
        .map(|mask| {
            let mut gamma = vec![1];
            gamma.extend((0..n - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 2));
            Bipartition {
                gamma,
                n_parties: n,
            }
        })
        .collect())
}

/// Amplitude reshaping for one bipartition.
#[derive(Debug, Clone)]
pub struct SplitLayout {
    row: Vec<usize>,
    col: Vec<usize>,
    d_gamma: usize,
    d_rest: usize,
}

impl SplitLayout {
    pub fn d_min(&self) -> usize {
        self.d_gamma.min(self.d_rest)
    }

    /// Schmidt vector of the (normalized) amplitude vector `amps`.
    pub fn schmidt(&self, amps: &CVector) -> Vec<f64> {
        let mut m = CMatrix::zeros(self.d_gamma, self.d_rest);
        for (idx, a) in amps.iter().enumerate() {
            m[(self.row[idx], self.col[idx])] = *a;
        }
        // The nonzero spectrum is shared by both reductions; use the smaller.
        let reduced = if self.d_gamma <= self.d_rest {
            &m * m.adjoint()
        } else {
            m.adjoint() * &m
        };
        let mut values = hermitian_eigenvalues(&reduced);
        for v in values.iter_mut() {
            if *v < EIGEN_FLOOR {
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        values.truncate(self.d_min());
        let sum: f64 = values.iter().sum();
        if sum > 0.0 {
            values.iter_mut().for_each(|v| *v /= sum);
        }
        values
    }
}

/// Schmidt coefficients (squared) of `psi` across `gamma`, sorted descending
/// and of length `min(dim γ, dim γ̄)`.
pub fn schmidt_vector(psi: &PureState, gamma: &Bipartition) -> Result<Vec<f64>> {
    Ok(gamma.layout(&psi.dims)?.schmidt(&psi.amplitudes))
}

/// Eigenvalues of a Hermitian matrix (unsorted). Closed form for 2x2.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    match m.nrows() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let b = m[(0, 1)];
            let mean = 0.5 * (a + d);
            let half = 0.5 * (a - d);
            let rad = (half * half + b.norm_sqr()).sqrt();
            vec![mean + rad, mean - rad]
        }
        _ => m.clone().symmetric_eigen().eigenvalues.iter().copied().collect(),
    }
}

/// A pure-state ensemble `{p_j, |ψ_j>}`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub states: Vec<PureState>,
}

impl Decomposition {
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if weights.len() != states.len() || weights.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < 0.0) || (sum - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::NotASimplexVector(format!(
                "ensemble weights sum to {sum}"
            )));
        }
        Ok(Self { weights, states })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `sum_j p_j |ψ_j><ψ_j|`.
    pub fn mixed(&self) -> CMatrix {
        let n = self.states[0].dim();
        let mut m = CMatrix::zeros(n, n);
        for (w, s) in self.weights.iter().zip(&self.states) {
            m += s.amplitudes() * s.amplitudes().adjoint() * C64::new(*w, 0.0);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn maximally_mixed_qubit_is_valid() {
        let m = CMatrix::identity(2, 2) / c(2.0);
        assert!(validate_density_matrix(m, vec![2]).is_ok());
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.2), c(-0.2)]));
        assert!(matches!(
            validate_density_matrix(m, vec![2]),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn coherence_exceeding_populations_rejected() {
        // p = 0.5, |r| = 0.6 violates |r|^2 <= p(1-p).
        let m = CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.6), c(0.6), c(0.5)]);
        assert!(matches!(
            validate_density_matrix(m, vec![2]),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn other_validation_errors() {
        let nh = CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.1), c(0.0), c(0.5)]);
        assert!(matches!(
            validate_density_matrix(nh, vec![2]),
            Err(Error::NotHermitian(_))
        ));
        let tr = CMatrix::identity(2, 2);
        assert!(matches!(
            validate_density_matrix(tr, vec![2]),
            Err(Error::TraceNotOne(_))
        ));
        let wrong = CMatrix::identity(3, 3) / c(3.0);
        assert!(matches!(
            validate_density_matrix(wrong, vec![2]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kron_of_ground_states() {
        let z = PureState::basis(vec![2], 0).unwrap().to_density();
        let zz = tensor_product(&z, &z);
        assert_eq!(zz.dims(), &[2, 2]);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(zz.matrix()[(i, j)], c(expect));
            }
        }
        let mm = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        let mm2 = tensor_product(&mm, &mm);
        assert!((mm2.matrix() - CMatrix::identity(4, 4) / c(4.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_cases() {
        let zz = PureState::basis(vec![2, 2], 0).unwrap().to_density();
        let r = partial_trace(&zz, &[1]).unwrap();
        assert_eq!(r.matrix()[(0, 0)], c(1.0));
        assert_eq!(r.matrix()[(1, 1)], c(0.0));

        let ghz = PureState::ghz(3).to_density();
        for k in 1..=3 {
            let r = partial_trace(&ghz, &[k]).unwrap();
            let want = CMatrix::identity(2, 2) / c(2.0);
            assert!((r.matrix() - want).norm() < 1e-14);
        }
        let r = partial_trace(&ghz, &[1, 3]).unwrap();
        assert!((r.matrix()[(0, 0)].re - 0.5).abs() < 1e-14);
        assert!((r.matrix()[(3, 3)].re - 0.5).abs() < 1e-14);
        assert!(r.matrix()[(0, 3)].norm() < 1e-14);

        assert!(matches!(partial_trace(&ghz, &[]), Err(Error::EmptyKeepSet)));
        assert!(matches!(
            partial_trace(&ghz, &[4]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn partial_trace_of_product_recovers_factor() {
        let a = PureState::normalized(
            vec![2, 2],
            CVector::from_vec(vec![c(0.3), C64::new(0.1, 0.4), c(-0.2), c(0.7)]),
        )
        .unwrap();
        let b = PureState::normalized(vec![3], CVector::from_vec(vec![c(1.0), c(2.0), c(0.5)]))
            .unwrap();
        let r = partial_trace(&a.kron(&b).to_density(), &[1, 2]).unwrap();
        assert!((r.matrix() - a.to_density().matrix()).norm() < 1e-12);
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn bipartition_enumeration() {
        let b3 = enumerate_bipartitions(3).unwrap();
        let names: Vec<String> = b3.iter().map(|b| b.to_string()).collect();
        assert_eq!(names, ["1|23", "12|3", "13|2"]);
        assert_eq!(enumerate_bipartitions(2).unwrap().len(), 1);
        assert_eq!(enumerate_bipartitions(4).unwrap().len(), 7);
        assert!(enumerate_bipartitions(1).is_err());
    }

    #[test]
    fn bipartition_canonicalizes() {
        let b = Bipartition::new(&[2, 3], 3).unwrap();
        assert_eq!(b.gamma(), &[1]);
        assert!(Bipartition::new(&[], 3).is_err());
        assert!(Bipartition::new(&[1, 2, 3], 3).is_err());
    }

    #[test]
    fn schmidt_examples() {
        let ghz = PureState::ghz(3);
        for b in enumerate_bipartitions(3).unwrap() {
            let s = schmidt_vector(&ghz, &b).unwrap();
            assert!((s[0] - 0.5).abs() < 1e-12 && (s[1] - 0.5).abs() < 1e-12);
        }
        let prod = PureState::basis(vec![2, 2, 2], 5).unwrap();
        for b in enumerate_bipartitions(3).unwrap() {
            assert_eq!(schmidt_vector(&prod, &b).unwrap(), vec![1.0, 0.0]);
        }
        let mut amps = CVector::zeros(8);
        amps[0] = c(0.6);
        amps[7] = C64::new(0.0, 0.8);
        let psi = PureState::new(vec![2, 2, 2], amps).unwrap();
        for b in enumerate_bipartitions(3).unwrap() {
            let s = schmidt_vector(&psi, &b).unwrap();
            assert!((s[0] - 0.64).abs() < 1e-12 && (s[1] - 0.36).abs() < 1e-12);
        }
    }

    #[test]
    fn schmidt_length_is_smaller_side() {
        let psi = PureState::basis(vec![2, 3, 2], 0).unwrap();
        let b = Bipartition::new(&[1, 2], 3).unwrap();
        assert_eq!(schmidt_vector(&psi, &b).unwrap().len(), 2);
        let b = Bipartition::new(&[2], 3).unwrap();
        assert_eq!(schmidt_vector(&psi, &b).unwrap().len(), 3);
    }

    #[test]
    fn apply_local_matches_kron() {
        let x = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let psi = PureState::basis(vec![2, 2, 2], 0).unwrap();
        let out = psi.apply_local(2, &x).unwrap();
        assert_eq!(out.amplitudes()[2], c(1.0));
    }

    #[test]
    fn two_by_two_eigenvalues_match_general_solver() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.3), C64::new(0.1, -0.2), C64::new(0.1, 0.2), c(0.7)],
        );
        let mut fast = hermitian_eigenvalues(&m);
        let mut slow: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        fast.sort_by(f64::total_cmp);
        slow.sort_by(f64::total_cmp);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
