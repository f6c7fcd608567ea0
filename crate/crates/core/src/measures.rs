//! Symmetric concave functions on the probability simplex and the pure-state
//! coherence and entanglement measures generated by them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{enumerate_bipartitions, Bipartition, DensityMatrix, PureState};

/// Tolerance for accepting a vector as a point of the simplex.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Entries in `[-ZERO_CLAMP, 0]` are read as exact zeros.
pub const ZERO_CLAMP: f64 = 1e-12;

/// Below this, a geometric-mean factor is treated as zero.
const GEO_FLOOR: f64 = 1e-300;

/// The generating functions supported by the measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConcaveFunction {
    /// `sqrt(2 Σ_{i≠j} p_i p_j)`.
    Concurrence,
    /// `sqrt(d/(d-1) Σ_{i≠j} p_i p_j)`. The stored `d_min` is only used for
    /// bare simplex evaluation; the measures substitute the dimension of the
    /// smaller side of the split (or the system dimension for coherence).
    Gbc { d_min: usize },
    /// `-Σ p_j log2 p_j`.
    ShannonEntropy,
}

impl ConcaveFunction {
    pub const ALL_DEFAULT: [ConcaveFunction; 3] = [
        ConcaveFunction::Concurrence,
        ConcaveFunction::Gbc { d_min: 2 },
        ConcaveFunction::ShannonEntropy,
    ];

    /// Same kind with the GBC normalization replaced by `d`.
    pub fn with_d_min(self, d: usize) -> Self {
        match self {
            ConcaveFunction::Gbc { .. } => ConcaveFunction::Gbc { d_min: d },
            other => other,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConcaveFunction::Concurrence => "concurrence",
            ConcaveFunction::Gbc { .. } => "gbc",
            ConcaveFunction::ShannonEntropy => "entropy",
        }
    }

    /// Evaluates on a vector already known to lie on the simplex.
    pub(crate) fn value(&self, p: &[f64]) -> f64 {
        match *self {
            ConcaveFunction::Concurrence => (2.0 * pair_sum(p)).max(0.0).sqrt(),
            ConcaveFunction::Gbc { d_min } => {
                let d = d_min as f64;
                (d / (d - 1.0) * pair_sum(p)).max(0.0).sqrt()
            }
            ConcaveFunction::ShannonEntropy => p
                .iter()
                .filter(|&&x| x > ZERO_CLAMP)
                .map(|&x| -x * x.log2())
                .sum(),
        }
    }
}

impl fmt::Display for ConcaveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcaveFunction::Gbc { d_min } => write!(f, "gbc(d_min={d_min})"),
            other => f.write_str(other.name()),
        }
    }
}

/// `Σ_{i≠j} p_i p_j`, with clamped entries.
fn pair_sum(p: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, &a) in p.iter().enumerate() {
        let a = if a.abs() <= ZERO_CLAMP { 0.0 } else { a };
        for &b in &p[i + 1..] {
            let b = if b.abs() <= ZERO_CLAMP { 0.0 } else { b };
            acc += a * b;
        }
    }
    2.0 * acc
}

/// Measure names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Concurrence,
    Gbc,
    Entropy,
    L1,
}

impl MeasureKind {
    /// The generating function, or `None` for the l1-norm.
    pub fn function(self) -> Option<ConcaveFunction> {
        match self {
            MeasureKind::Concurrence => Some(ConcaveFunction::Concurrence),
            MeasureKind::Gbc => Some(ConcaveFunction::Gbc { d_min: 2 }),
            MeasureKind::Entropy => Some(ConcaveFunction::ShannonEntropy),
            MeasureKind::L1 => None,
        }
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concurrence" => Ok(MeasureKind::Concurrence),
            "gbc" => Ok(MeasureKind::Gbc),
            "entropy" => Ok(MeasureKind::Entropy),
            "l1" => Ok(MeasureKind::L1),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

/// Squared moduli of the amplitudes in the reference basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceVector {
    pub probabilities: Vec<f64>,
}

pub fn coherence_vector(psi: &PureState) -> CoherenceVector {
    CoherenceVector {
        probabilities: psi.amplitudes().iter().map(|a| a.norm_sqr()).collect(),
    }
}

fn check_simplex(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::NotASimplexVector("empty vector".into()));
    }
    if let Some(x) = p.iter().find(|&&x| x < -SIMPLEX_TOL || !x.is_finite()) {
        return Err(Error::NotASimplexVector(format!("entry {x}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SIMPLEX_TOL {
        return Err(Error::NotASimplexVector(format!("entries sum to {sum}")));
    }
    Ok(())
}

/// `f(p)` for a probability vector `p`.
pub fn eval_f(f: ConcaveFunction, p: &[f64]) -> Result<f64> {
    check_simplex(p)?;
    Ok(f.value(p))
}

/// `C_f(|ψ>) = f(μ(|ψ>))`. GBC is normalized with the full dimension of
/// `psi`, which is treated as a single system.
pub fn coherence_pure(f: ConcaveFunction, psi: &PureState) -> f64 {
    f.with_d_min(psi.dim()).value(&coherence_vector(psi).probabilities)
}

/// `Σ_{i≠j} |ρ_ij|`.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
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

/// `E^f_γ(|ψ>) = f(λ_γ(|ψ>))`.
pub fn e_f_gamma_pure(f: ConcaveFunction, psi: &PureState, gamma: &Bipartition) -> Result<f64> {
    let layout = gamma.layout(psi.dims())?;
    let lambda = layout.schmidt(psi.amplitudes());
    Ok(f.with_d_min(layout.d_min()).value(&lambda))
}

fn per_bipartition(f: ConcaveFunction, psi: &PureState) -> Result<Vec<(Bipartition, f64)>> {
    enumerate_bipartitions(psi.n_parties())?
        .into_iter()
        .map(|b| {
            let v = e_f_gamma_pure(f, psi, &b)?;
            Ok((b, v))
        })
        .collect()
}

/// Minimum over bipartitions together with the first minimizing split in
/// canonical order.
pub fn e_min_gme_pure_argmin(f: ConcaveFunction, psi: &PureState) -> Result<(f64, Bipartition)> {
    let mut best: Option<(f64, Bipartition)> = None;
    for (b, v) in per_bipartition(f, psi)? {
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, b));
        }
    }
    Ok(best.expect("at least one bipartition"))
}

/// Min-GME measure of a pure state.
pub fn e_min_gme_pure(f: ConcaveFunction, psi: &PureState) -> Result<f64> {
    Ok(e_min_gme_pure_argmin(f, psi)?.0)
}

/// Number of unordered bipartitions, written as the piecewise binomial sum.
pub fn c_alpha(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::TooFewParties(n));
    }
    if n > 62 {
        return Err(Error::InvalidConfig(format!("{n} parties overflows")));
    }
    let n64 = n as u64;
    let value = if n % 2 == 1 {
        (1..=(n64 - 1) / 2).map(|m| binomial(n64, m)).sum()
    } else {
        (1..=(n64 - 2) / 2).map(|m| binomial(n64, m)).sum::<u64>() + binomial(n64, n64 / 2) / 2
    };
    Ok(value)
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Geometric mean of `E^f_γ` over all bipartitions.
pub fn g_geo_gme_pure(f: ConcaveFunction, psi: &PureState) -> Result<f64> {
    let values: Vec<f64> = per_bipartition(f, psi)?.into_iter().map(|(_, v)| v).collect();
    Ok(geometric_mean(&values, c_alpha(psi.n_parties())? as f64))
}

/// `(∏ x)^(1/c)` in the log domain; zero if any factor is below 1e-300.
pub(crate) fn geometric_mean(values: &[f64], c: f64) -> f64 {
    if values.iter().any(|&v| v <= GEO_FLOOR) {
        return 0.0;
    }
    (values.iter().map(|v| v.ln()).sum::<f64>() / c).exp()
}

/// Largest `E^f_γ` over all bipartitions.
pub fn e_max_pure(f: ConcaveFunction, psi: &PureState) -> Result<f64> {
    Ok(per_bipartition(f, psi)?
        .into_iter()
        .map(|(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Indices of `|ii...i>` for `i < min(dims)`.
pub fn repeated_digit_indices(dims: &[usize]) -> Vec<usize> {
    let d = dims.iter().copied().min().unwrap_or(0);
    (0..d)
        .map(|i| dims.iter().fold(0usize, |acc, &dk| acc * dk + i))
        .collect()
}

/// GME-concurrence of a state supported on the repeated-digit subspace,
/// `Σ_{i≠j} |s_ij|` for `ρ = Σ s_ij |ii..i><jj..j|`.
pub fn xstate_gme_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let support = repeated_digit_indices(rho.dims());
    let m = rho.matrix();
    let n = m.nrows();
    let mut in_support = vec![false; n];
    for &k in &support {
        in_support[k] = true;
    }
    let mut outside: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if !(in_support[i] && in_support[j]) {
                outside = outside.max(m[(i, j)].norm());
            }
        }
    }
    if outside >= 1e-12 {
        return Err(Error::NotADiagonalCorrelationState(outside));
    }
    let mut acc = 0.0;
    for &i in &support {
        for &j in &support {
            if i != j {
                acc += m[(i, j)].norm();
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{CMatrix, CVector, C64};

    fn qubit(a: C64, b: C64) -> PureState {
        PureState::new(vec![2], CVector::from_vec(vec![a, b])).unwrap()
    }

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn coherence_vector_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = qubit(r(h), r(h));
        let p = coherence_vector(&plus).probabilities;
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
        let zero = qubit(r(1.0), r(0.0));
        assert_eq!(coherence_vector(&zero).probabilities, vec![1.0, 0.0]);
        let ab = qubit(r(0.6), r(0.8));
        let p = coherence_vector(&ab).probabilities;
        assert!((p[0] - 0.36).abs() < 1e-15 && (p[1] - 0.64).abs() < 1e-15);
    }

    #[test]
    fn eval_f_examples() {
        let half = [0.5, 0.5];
        assert!((eval_f(ConcaveFunction::Concurrence, &half).unwrap() - 1.0).abs() < 1e-15);
        assert!((eval_f(ConcaveFunction::ShannonEntropy, &half).unwrap() - 1.0).abs() < 1e-15);
        for f in ConcaveFunction::ALL_DEFAULT {
            assert_eq!(eval_f(f, &[1.0, 0.0, 0.0]).unwrap(), 0.0);
        }
        assert!(matches!(
            eval_f(ConcaveFunction::Concurrence, &[0.5, 0.6]),
            Err(Error::NotASimplexVector(_))
        ));
        assert!(eval_f(ConcaveFunction::Concurrence, &[1.1, -0.1]).is_err());
    }

    #[test]
    fn entropy_tolerates_clamped_noise() {
        let v = eval_f(ConcaveFunction::ShannonEntropy, &[1.0 + 5e-13, -5e-13]).unwrap();
        assert!(v.abs() < 1e-11);
    }

    #[test]
    fn gbc_at_two_is_concurrence() {
        let p = [0.2, 0.3, 0.5];
        let a = eval_f(ConcaveFunction::Gbc { d_min: 2 }, &p).unwrap();
        let b = eval_f(ConcaveFunction::Concurrence, &p).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn coherence_pure_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((coherence_pure(ConcaveFunction::Concurrence, &qubit(r(h), r(h))) - 1.0).abs() < 1e-15);
        for f in ConcaveFunction::ALL_DEFAULT {
            let basis = PureState::basis(vec![3], 2).unwrap();
            assert_eq!(coherence_pure(f, &basis), 0.0);
        }
        let (a, b) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        let v = coherence_pure(ConcaveFunction::Concurrence, &qubit(a, b));
        assert!((v - 2.0 * (a * b).norm()).abs() < 1e-15);
    }

    #[test]
    fn l1_examples() {
        let m = CMatrix::from_row_slice(2, 2, &[r(0.5), r(0.4), r(0.4), r(0.5)]);
        let rho = DensityMatrix::new(m, vec![2]).unwrap();
        assert!((l1_coherence(&rho) - 0.8).abs() < 1e-15);
        let diag = DensityMatrix::diagonal(vec![3], &[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(l1_coherence(&diag), 0.0);
        for d in 2..6 {
            let m = CMatrix::from_element(d, d, r(1.0 / d as f64));
            let rho = DensityMatrix::new(m, vec![d]).unwrap();
            assert!((l1_coherence(&rho) - (d as f64 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_and_gme_examples() {
        let ghz = PureState::ghz(3);
        for b in enumerate_bipartitions(3).unwrap() {
            let v = e_f_gamma_pure(ConcaveFunction::Concurrence, &ghz, &b).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert!((e_min_gme_pure(ConcaveFunction::Concurrence, &ghz).unwrap() - 1.0).abs() < 1e-12);
        assert!((g_geo_gme_pure(ConcaveFunction::Concurrence, &ghz).unwrap() - 1.0).abs() < 1e-12);

        // Bell pair on parties 1,2 times |0> on party 3.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::new(vec![2, 2], CVector::from_vec(vec![r(h), r(0.0), r(0.0), r(h)]))
            .unwrap();
        let bisep = bell.kron(&PureState::basis(vec![2], 0).unwrap());
        let (v, arg) = e_min_gme_pure_argmin(ConcaveFunction::Concurrence, &bisep).unwrap();
        assert!(v.abs() < 1e-12);
        assert_eq!(arg.to_string(), "12|3");
        assert_eq!(g_geo_gme_pure(ConcaveFunction::Concurrence, &bisep).unwrap(), 0.0);
        let split = Bipartition::new(&[3], 3).unwrap();
        assert!(e_f_gamma_pure(ConcaveFunction::ShannonEntropy, &bisep, &split).unwrap().abs() < 1e-12);
    }

    #[test]
    fn w_state_values() {
        let w = PureState::w(3);
        let expect = 2.0 * 2f64.sqrt() / 3.0;
        for b in enumerate_bipartitions(3).unwrap() {
            let s = crate::state::schmidt_vector(&w, &b).unwrap();
            assert!((s[0] - 2.0 / 3.0).abs() < 1e-12);
        }
        assert!((e_min_gme_pure(ConcaveFunction::Concurrence, &w).unwrap() - expect).abs() < 1e-12);
        assert!((g_geo_gme_pure(ConcaveFunction::Concurrence, &w).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn alpha_beta_ghz_family() {
        let (a, b) = (0.6, 0.8);
        let mut amps = CVector::zeros(8);
        amps[0] = r(a);
        amps[7] = r(b);
        let psi = PureState::new(vec![2, 2, 2], amps).unwrap();
        for g in enumerate_bipartitions(3).unwrap() {
            let v = e_f_gamma_pure(ConcaveFunction::Concurrence, &psi, &g).unwrap();
            assert!((v - 2.0 * a * b).abs() < 1e-12);
        }
    }

    #[test]
    fn c_alpha_values() {
        assert_eq!(c_alpha(3).unwrap(), 3);
        assert_eq!(c_alpha(4).unwrap(), 7);
        for n in 2..=10 {
            assert_eq!(c_alpha(n).unwrap(), (1u64 << (n - 1)) - 1);
            assert_eq!(c_alpha(n).unwrap() as usize, enumerate_bipartitions(n).unwrap().len());
        }
        assert!(c_alpha(1).is_err());
    }

    #[test]
    fn xstate_examples() {
        let mut m = CMatrix::zeros(8, 8);
        m[(0, 0)] = r(0.5);
        m[(7, 7)] = r(0.5);
        m[(0, 7)] = r(0.4);
        m[(7, 0)] = r(0.4);
        let rho = DensityMatrix::new(m, vec![2, 2, 2]).unwrap();
        assert!((xstate_gme_concurrence(&rho).unwrap() - 0.8).abs() < 1e-15);
        let ghz = PureState::ghz(3).to_density();
        assert!((xstate_gme_concurrence(&ghz).unwrap() - 1.0).abs() < 1e-12);
        let mut d = CMatrix::zeros(8, 8);
        d[(0, 0)] = r(0.3);
        d[(7, 7)] = r(0.7);
        let rho = DensityMatrix::new(d, vec![2, 2, 2]).unwrap();
        assert_eq!(xstate_gme_concurrence(&rho).unwrap(), 0.0);
        let w = PureState::w(3).to_density();
        assert!(matches!(
            xstate_gme_concurrence(&w),
            Err(Error::NotADiagonalCorrelationState(_))
        ));
    }

    #[test]
    fn measure_kind_parsing() {
        assert_eq!("l1".parse::<MeasureKind>().unwrap(), MeasureKind::L1);
        assert_eq!(
            "entropy".parse::<MeasureKind>().unwrap().function(),
            Some(ConcaveFunction::ShannonEntropy)
        );
        assert!("robustness".parse::<MeasureKind>().is_err());
    }
}
