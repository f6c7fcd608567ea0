//! Derivative-free local minimization (Nelder–Mead with dimension-adaptive
//! coefficients and simplex rebuilds at the incumbent).

/// Stopping rules for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Budget of simplex iterations, shared across rebuilds.
    pub max_iterations: usize,
    /// A round stops once the spread of simplex values is at most this.
    pub f_tol: f64,
    /// ... and every vertex is within this distance of the best one.
    pub x_tol: f64,
    /// Edge length of the initial (and every rebuilt) simplex.
    pub initial_step: f64,
    /// Maximum number of rebuilds around the incumbent.
    pub max_rebuilds: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            f_tol: 1e-9,
            x_tol: 1e-7,
            initial_step: 0.5,
            max_rebuilds: 8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// True when the last round met the tolerances and a rebuild found no
    /// further improvement above `f_tol`.
    pub converged: bool,
}

struct Counter<F> {
    f: F,
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counter<F> {
    fn call(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

/// Minimizes `f` starting from `x0`. The returned value never exceeds `f(x0)`.
pub fn nelder_mead<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let mut obj = Counter { f, evaluations: 0 };
    let n = x0.len();
    let mut best_x = x0.to_vec();
    let mut best_v = obj.call(x0);
    if n == 0 {
        return NelderMeadResult {
            x: best_x,
            value: best_v,
            iterations: 0,
            evaluations: obj.evaluations,
            converged: true,
        };
    }

    let mut iterations = 0;
    let mut converged = false;
    for _round in 0..=opts.max_rebuilds {
        let budget = opts.max_iterations.saturating_sub(iterations);
        if budget == 0 {
            break;
        }
        let start_v = best_v;
        let (x, v, used, met) = run_round(&mut obj, &best_x, best_v, opts, budget);
        iterations += used;
        if v < best_v {
            best_x = x;
            best_v = v;
        }
        if !met {
            converged = false;
            break;
        }
        converged = true;
        if start_v - best_v <= opts.f_tol {
            break;
        }
    }
    NelderMeadResult {
        x: best_x,
        value: best_v,
        iterations,
        evaluations: obj.evaluations,
        converged,
    }
}

fn run_round<F: FnMut(&[f64]) -> f64>(
    obj: &mut Counter<F>,
    x0: &[f64],
    v0: f64,
    opts: &NelderMeadOptions,
    budget: usize,
) -> (Vec<f64>, f64, usize, bool) {
    let n = x0.len();
    let nf = n as f64;
    let alpha = 1.0;
    let gamma = 1.0 + 2.0 / nf;
    let rho = 0.75 - 1.0 / (2.0 * nf);
    let sigma = 1.0 - 1.0 / nf;
    // Single-parameter problems keep the classic coefficients.
    let (gamma, rho, sigma) = if n == 1 { (2.0, 0.5, 0.5) } else { (gamma, rho, sigma) };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let v = obj.call(&x);
        simplex.push((x, v));
    }

    let mut used = 0;
    let mut met = false;
    while used < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| dist_inf(x, &simplex[0].0))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol && size <= opts.x_tol {
            met = true;
            break;
        }
        used += 1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / nf;
            }
        }
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let vr = obj.call(&xr);
        if vr < simplex[0].1 {
            let xe = along(alpha * gamma);
            let ve = obj.call(&xe);
            simplex[n] = if ve < vr { (xe, ve) } else { (xr, vr) };
            continue;
        }
        if vr < simplex[n - 1].1 {
            simplex[n] = (xr, vr);
            continue;
        }
        let (xc, vc) = if vr < worst.1 {
            let xc = along(alpha * rho);
            let vc = obj.call(&xc);
            (xc, vc)
        } else {
            let xc = along(-rho);
            let vc = obj.call(&xc);
            (xc, vc)
        };
        if vc < worst.1.min(vr) {
            simplex[n] = (xc, vc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, xi)| b + sigma * (xi - b))
                .collect();
            let v = obj.call(&x);
            *vertex = (x, v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, v) = simplex.swap_remove(0);
    (x, v, used, met)
}

fn dist_inf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
