//! Convex-roof extension of pure-state measures to mixed states.
//!
//! Every ensemble of a rank-`r` state `ρ = Σ_k λ_k |e_k><e_k|` is generated by
//! an `m × r` isometry `V` through `√p_j |ψ_j> = Σ_k V_jk √λ_k |e_k>`. The
//! search parameterizes `V` as the first `r` columns of `exp(A)` for an
//! anti-Hermitian `m × m` generator `A` and minimizes the ensemble average
//! with multistart Nelder–Mead. Any value it reports is attained by the
//! returned decomposition, so it is an upper bound on the true roof.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{c_alpha, geometric_mean, ConcaveFunction};
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::random::substream;
use crate::state::{
    enumerate_bipartitions, Bipartition, CMatrix, CVector, Decomposition, DensityMatrix,
    PureState, SplitLayout, C64, EIGEN_FLOOR,
};

/// Members lighter than this are dropped from a decomposition.
pub const WEIGHT_FLOOR: f64 = 1e-14;

/// Values at or below this end the search early.
const ROOF_ZERO: f64 = 1e-10;

/// Largest default ensemble size.
pub const MAX_DEFAULT_ENSEMBLE: usize = 16;

/// Pure-state functional whose convex roof is taken.
#[derive(Debug, Clone, PartialEq)]
pub enum RoofMeasure {
    Coherence(ConcaveFunction),
    MinGme(ConcaveFunction),
    Gamma(ConcaveFunction, Bipartition),
    GeoGme(ConcaveFunction),
}

impl RoofMeasure {
    pub fn function(&self) -> ConcaveFunction {
        match self {
            RoofMeasure::Coherence(f)
            | RoofMeasure::MinGme(f)
            | RoofMeasure::Gamma(f, _)
            | RoofMeasure::GeoGme(f) => *f,
        }
    }

    /// Evaluates the functional on a single pure state.
    pub fn eval_pure(&self, psi: &PureState) -> Result<f64> {
        Ok(PureEvaluator::new(self, psi.dims())?.eval(psi.amplitudes()))
    }
}

/// A [`RoofMeasure`] bound to fixed subsystem dimensions, with the
/// bipartition layouts precomputed.
pub struct PureEvaluator {
    kind: EvalKind,
    f: ConcaveFunction,
    layouts: Vec<SplitLayout>,
    c: f64,
}

enum EvalKind {
    Coherence,
    Min,
    Gamma,
    Geo,
}

impl PureEvaluator {
    pub fn new(measure: &RoofMeasure, dims: &[usize]) -> Result<Self> {
        let f = measure.function();
        let (kind, layouts, c) = match measure {
            RoofMeasure::Coherence(_) => (EvalKind::Coherence, Vec::new(), 1.0),
            RoofMeasure::Gamma(_, b) => (EvalKind::Gamma, vec![b.layout(dims)?], 1.0),
            RoofMeasure::MinGme(_) | RoofMeasure::GeoGme(_) => {
                let layouts = enumerate_bipartitions(dims.len())?
                    .iter()
                    .map(|b| b.layout(dims))
                    .collect::<Result<Vec<_>>>()?;
                let c = c_alpha(dims.len())? as f64;
                let kind = if matches!(measure, RoofMeasure::MinGme(_)) {
                    EvalKind::Min
                } else {
                    EvalKind::Geo
                };
                (kind, layouts, c)
            }
        };
        Ok(Self { kind, f, layouts, c })
    }

    fn per_split(&self, amps: &CVector) -> impl Iterator<Item = f64> + '_ {
        let amps = amps.clone();
        self.layouts
            .iter()
            .map(move |l| self.f.with_d_min(l.d_min()).value(&l.schmidt(&amps)))
    }

    /// Value on a normalized amplitude vector.
    pub fn eval(&self, amps: &CVector) -> f64 {
        match self.kind {
            EvalKind::Coherence => {
                let p: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
                self.f.with_d_min(amps.len()).value(&p)
            }
            EvalKind::Gamma => self.per_split(amps).next().unwrap_or(0.0),
            EvalKind::Min => self.per_split(amps).fold(f64::INFINITY, f64::min),
            EvalKind::Geo => {
                let values: Vec<f64> = self.per_split(amps).collect();
                geometric_mean(&values, self.c)
            }
        }
    }
}

/// Search envelope for [`convex_roof`].
#[derive(Debug, Clone)]
pub struct RoofConfig {
    /// Ensemble size `m`; `None` means `min(rank², 16)`, at least `rank`.
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    /// Nelder–Mead iteration budget per restart.
    pub max_iterations: usize,
    /// Convergence tolerance on the objective.
    pub tolerance: f64,
    pub seed: u64,
    /// Extra start, as a generator of side at most `m` (embedded top-left).
    pub warm_start: Option<CMatrix>,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            restarts: 16,
            max_iterations: 2000,
            tolerance: 1e-6,
            seed: 0,
            warm_start: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RestartStat {
    pub index: usize,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Outcome of a roof search. `value` is an upper bound on the true roof.
#[derive(Debug, Clone)]
pub struct RoofResult {
    pub value: f64,
    pub decomposition: Decomposition,
    /// True if the winning restart met the tolerance.
    pub converged: bool,
    pub best_restart: usize,
    pub restarts: Vec<RestartStat>,
    pub ensemble_size: usize,
    /// Anti-Hermitian generator of the winning isometry.
    pub generator: CMatrix,
}

/// Eigen-data of a state restricted to its numerical support.
struct Support {
    dims: Vec<usize>,
    /// Columns are `√λ_k |e_k>`.
    scaled: CMatrix,
    rank: usize,
}

impl Support {
    fn of(rho: &DensityMatrix) -> Self {
        let (values, vectors) = rho.eigen();
        let kept: Vec<usize> = (0..values.len()).filter(|&k| values[k] > EIGEN_FLOOR).collect();
        let n = rho.dim();
        let mut scaled = CMatrix::zeros(n, kept.len());
        for (col, &k) in kept.iter().enumerate() {
            let s = C64::new(values[k].sqrt(), 0.0);
            scaled.set_column(col, &(&vectors[k] * s));
        }
        Self {
            dims: rho.dims().to_vec(),
            rank: kept.len(),
            scaled,
        }
    }

    /// Unnormalized members `√p_j |ψ_j>` for the rows of `v`.
    fn members(&self, v: &CMatrix) -> Vec<CVector> {
        (0..v.nrows())
            .map(|j| {
                let mut out = CVector::zeros(self.scaled.nrows());
                for k in 0..self.rank {
                    out.axpy(v[(j, k)], &self.scaled.column(k), C64::new(1.0, 0.0));
                }
                out
            })
            .collect()
    }

    fn average(&self, eval: &PureEvaluator, v: &CMatrix) -> f64 {
        let mut total = 0.0;
        for member in self.members(v) {
            let w = member.norm_squared();
            if w < WEIGHT_FLOOR {
                continue;
            }
            total += w * eval.eval(&(member / C64::new(w.sqrt(), 0.0)));
        }
        total
    }

    fn decomposition(&self, v: &CMatrix) -> Result<Decomposition> {
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for member in self.members(v) {
            let w = member.norm_squared();
            if w < WEIGHT_FLOOR {
                continue;
            }
            weights.push(w);
            states.push(PureState::from_parts(
                self.dims.clone(),
                member / C64::new(w.sqrt(), 0.0),
            ));
        }
        let sum: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= sum);
        Decomposition::new(weights, states)
    }
}

/// The ensemble generated by the isometry `v` (orthonormal columns, one per
/// nonzero eigenvalue of `rho` in descending order).
pub fn decomposition_from_isometry(rho: &DensityMatrix, v: &CMatrix) -> Result<Decomposition> {
    let support = Support::of(rho);
    if v.ncols() != support.rank {
        return Err(Error::RankMismatch {
            got: v.ncols(),
            rank: support.rank,
        });
    }
    let dev = (v.adjoint() * v - CMatrix::identity(v.ncols(), v.ncols()))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if dev > 1e-9 {
        return Err(Error::NotAnIsometry(dev));
    }
    support.decomposition(v)
}

/// Number of real parameters of an `m × m` anti-Hermitian generator.
pub fn generator_dim(m: usize) -> usize {
    m * m
}

/// Anti-Hermitian matrix from its real parameters: the diagonal imaginary
/// parts first, then `(re, im)` of each upper-triangle entry row by row.
pub fn generator_from_params(params: &[f64], m: usize) -> CMatrix {
    let mut a = CMatrix::zeros(m, m);
    for k in 0..m {
        a[(k, k)] = C64::new(0.0, params[k]);
    }
    let mut idx = m;
    for j in 0..m {
        for k in j + 1..m {
            let (x, y) = (params[idx], params[idx + 1]);
            a[(j, k)] = C64::new(x, y);
            a[(k, j)] = C64::new(-x, y);
            idx += 2;
        }
    }
    a
}

/// Inverse of [`generator_from_params`].
pub fn params_from_generator(a: &CMatrix) -> Vec<f64> {
    let m = a.nrows();
    let mut params: Vec<f64> = (0..m).map(|k| a[(k, k)].im).collect();
    for j in 0..m {
        for k in j + 1..m {
            params.push(a[(j, k)].re);
            params.push(a[(j, k)].im);
        }
    }
    params
}

/// Places `a` in the top-left block of an `m × m` zero matrix, so that
/// `exp` of the result is `exp(a) ⊕ I`.
pub fn embed_generator(a: &CMatrix, m: usize) -> CMatrix {
    let mut out = CMatrix::zeros(m, m);
    let k = a.nrows().min(m);
    out.view_mut((0, 0), (k, k)).copy_from(&a.view((0, 0), (k, k)));
    out
}

/// First `r` columns of `exp(a)`.
pub fn isometry_from_generator(a: &CMatrix, r: usize) -> CMatrix {
    a.clone().exp().columns(0, r).into_owned()
}

fn default_ensemble_size(rank: usize) -> usize {
    (rank * rank).min(MAX_DEFAULT_ENSEMBLE).max(rank)
}

/// Minimizes `Σ_j p_j M(|ψ_j>)` over decompositions of `rho`.
///
/// Restart 0 starts at the eigendecomposition (zero generator); the others
/// start at random generators drawn from per-restart substreams of
/// `cfg.seed`. A warm start, if given, is an extra restart after those.
/// The lowest value wins, ties going to the lowest restart index.
///
/// With the default ensemble size and no warm start, the search first runs
/// with `m = rank` and then warm-starts the full-size search from that
/// optimum. Small ensembles are far easier to search and often optimal.
pub fn convex_roof(measure: &RoofMeasure, rho: &DensityMatrix, cfg: &RoofConfig) -> Result<RoofResult> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidConfig("restarts must be at least 1".into()));
    }
    let support = Support::of(rho);
    let rank = support.rank;
    let m = cfg.ensemble_size.unwrap_or_else(|| default_ensemble_size(rank));
    if m < rank {
        return Err(Error::InvalidConfig(format!(
            "ensemble size {m} is below the rank {rank}"
        )));
    }
    let eval = PureEvaluator::new(measure, rho.dims())?;

    if rank == 1 {
        let v = CMatrix::identity(1, 1);
        let decomposition = support.decomposition(&v)?;
        let value = eval.eval(decomposition.states[0].amplitudes());
        return Ok(RoofResult {
            value,
            decomposition,
            converged: true,
            best_restart: 0,
            restarts: vec![RestartStat {
                index: 0,
                value,
                iterations: 0,
                evaluations: 1,
                converged: true,
            }],
            ensemble_size: 1,
            generator: CMatrix::zeros(1, 1),
        });
    }

    if cfg.ensemble_size.is_none() && cfg.warm_start.is_none() && m > rank {
        let first = search(&eval, &support, cfg, rank, None)?;
        // Every measure is nonnegative, so this cannot be improved on.
        if first.value <= ROOF_ZERO {
            return Ok(first);
        }
        return search(&eval, &support, cfg, m, Some(&first.generator));
    }
    search(&eval, &support, cfg, m, cfg.warm_start.as_ref())
}

fn search(
    eval: &PureEvaluator,
    support: &Support,
    cfg: &RoofConfig,
    m: usize,
    warm_start: Option<&CMatrix>,
) -> Result<RoofResult> {
    let rank = support.rank;
    let n_params = generator_dim(m);
    let mut starts: Vec<Vec<f64>> = (0..cfg.restarts)
        .map(|i| {
            if i == 0 {
                vec![0.0; n_params]
            } else {
                use rand::Rng;
                use rand_distr::StandardNormal;
                let mut rng = substream(cfg.seed, i as u64);
                (0..n_params).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
            }
        })
        .collect();
    if let Some(w) = warm_start {
        starts.push(params_from_generator(&embed_generator(w, m)));
    }

    let opts = NelderMeadOptions {
        max_iterations: cfg.max_iterations,
        f_tol: cfg.tolerance,
        x_tol: cfg.tolerance.sqrt(),
        initial_step: 0.5,
        max_rebuilds: 16,
    };
    let objective = |p: &[f64]| {
        let v = isometry_from_generator(&generator_from_params(p, m), rank);
        support.average(eval, &v)
    };
    let runs: Vec<(RestartStat, Vec<f64>)> = starts
        .par_iter()
        .enumerate()
        .map(|(index, x0)| {
            let res = nelder_mead(objective, x0, &opts);
            (
                RestartStat {
                    index,
                    value: res.value,
                    iterations: res.iterations,
                    evaluations: res.evaluations,
                    converged: res.converged,
                },
                res.x,
            )
        })
        .collect();

    let (best_idx, _) = runs
        .iter()
        .enumerate()
        .fold((0usize, f64::INFINITY), |(bi, bv), (i, (stat, _))| {
            if stat.value < bv - 1e-12 {
                (i, stat.value)
            } else {
                (bi, bv)
            }
        });
    let generator = generator_from_params(&runs[best_idx].1, m);
    let v = isometry_from_generator(&generator, rank);
    let decomposition = support.decomposition(&v)?;
    let value = decomposition
        .weights
        .iter()
        .zip(&decomposition.states)
        .map(|(w, s)| w * eval.eval(s.amplitudes()))
        .sum();
    Ok(RoofResult {
        value,
        decomposition,
        converged: runs[best_idx].0.converged,
        best_restart: best_idx,
        restarts: runs.into_iter().map(|(s, _)| s).collect(),
        ensemble_size: m,
        generator,
    })
}

/// `G_{ij}(θ, φ)` acting on rows `i`, `j` of `v`.
fn givens(v: &mut CMatrix, i: usize, j: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let e = C64::from_polar(1.0, phi);
    for col in 0..v.ncols() {
        let (a, b) = (v[(i, col)], v[(j, col)]);
        v[(i, col)] = a * c - e.conj() * b * s;
        v[(j, col)] = e * a * s + b * c;
    }
}

/// Rotation plane sequences for the gridded ensembles of size 2, 3 and 4.
const GRID_PLANES: [&[(usize, usize)]; 3] = [
    &[(0, 1)],
    &[(1, 2), (0, 2), (0, 1)],
    &[(1, 3), (0, 3), (0, 2), (0, 1)],
];

fn grid_points(n: usize, lo: f64, hi: f64, closed: bool) -> Vec<f64> {
    let steps = if closed { n.saturating_sub(1).max(1) } else { n };
    (0..n).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect()
}

/// Exhaustive scan over gridded decompositions of a rank-≤2 state.
///
/// Two-member ensembles use a `grid_resolution × grid_resolution` grid over
/// one rotation angle and phase. Three- and four-member ensembles are
/// products of 3 and 4 rotations on coarser grids of
/// `clamp(grid_resolution / 30, 3, 8)` and `clamp(grid_resolution / 50, 2, 5)`
/// points per coordinate. Intended as an independent cross-check only.
pub fn brute_force_roof(measure: &RoofMeasure, rho: &DensityMatrix, grid_resolution: usize) -> Result<f64> {
    let support = Support::of(rho);
    if support.rank > 2 || rho.dim() > 4 {
        return Err(Error::RankTooHigh {
            rank: support.rank,
            dim: rho.dim(),
        });
    }
    let eval = PureEvaluator::new(measure, rho.dims())?;
    if support.rank == 1 {
        return Ok(support.average(&eval, &CMatrix::identity(1, 1)));
    }
    let n = grid_resolution.max(2);
    let sizes = [n, (n / 30).clamp(3, 8), (n / 50).clamp(2, 5)];

    let mut best = f64::INFINITY;
    for (slot, planes) in GRID_PLANES.iter().enumerate() {
        let m = slot + 2;
        let k = sizes[slot];
        let thetas = grid_points(k, 0.0, std::f64::consts::FRAC_PI_2, true);
        let phis = grid_points(k, 0.0, std::f64::consts::TAU, false);
        let per_plane = k * k;
        let total = per_plane.pow(planes.len() as u32);
        let local = (0..total)
            .into_par_iter()
            .map(|mut code| {
                let mut v = CMatrix::identity(m, 2);
                for &(i, j) in planes.iter() {
                    let c = code % per_plane;
                    code /= per_plane;
                    givens(&mut v, i, j, thetas[c / k], phis[c % k]);
                }
                support.average(&eval, &v)
            })
            .reduce(|| f64::INFINITY, f64::min);
        best = best.min(local);
    }
    Ok(best)
}
