//! Largest adjacency eigenvalues of graphs and of atom layer quotients.
//!
//! Also holds the `λ₁(T_k)` recurrence.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::atoms::{Atom, LayerSizeSequence};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::Graph;
use crate::matching::{char_polynomial, MAX_CHARPOLY_VERTICES};

pub const POWER_MAX_ITERATIONS: usize = 100_000;
pub const POWER_RAYLEIGH_TOL: f64 = 1e-12;
pub const POWER_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralMethod {
    /// Largest root of the exact characteristic polynomial.
    ExactPoly,
    /// Lanczos or power iteration.
    Iterative,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub lambda1: f64,
    pub method: SpectralMethod,
    /// `‖Av - λv‖∞ / ‖v‖∞` for the final iterate; `None` for exact results.
    pub residual: Option<f64>,
    pub iterations: usize,
}

/// `λ₁(G)` on the default execution mode.
pub fn lambda_max(g: &Graph) -> SpectralSummary {
    lambda_max_with(g, Execution::default())
}

/// `λ₁(G)`: exact for `n <= 30`, Lanczos iteration above.
pub fn lambda_max_with(g: &Graph, exec: Execution) -> SpectralSummary {
    if g.n() <= MAX_CHARPOLY_VERTICES {
        let lambda1 = if g.num_edges() == 0 {
            0.0
        } else {
            let phi = char_polynomial(g).expect("n <= 30");
            phi.largest_real_root().expect("degree >= 1")
        };
        return SpectralSummary { lambda1, method: SpectralMethod::ExactPoly, residual: None, iterations: 0 };
    }
    lanczos(g, exec)
}

/// Adjacency in compressed sparse rows, for fast products.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn new(g: &Graph) -> Self {
        let mut offsets = Vec::with_capacity(g.n() + 1);
        let mut targets = Vec::with_capacity(2 * g.num_edges());
        offsets.push(0);
        for v in 0..g.n() {
            targets.extend(g.neighbors(v).iter().map(|&w| w as u32));
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    /// `out = A x`. Each row is summed sequentially, so the result does not
    /// depend on the execution mode.
    fn apply(&self, exec: Execution, x: &[f64], out: &mut [f64]) {
        exec::fill_indexed(exec, out, |v| {
            self.targets[self.offsets[v]..self.offsets[v + 1]].iter().map(|&w| x[w as usize]).sum::<f64>()
        });
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_residual(x: &[f64], ax: &[f64], lambda: f64) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    x.iter().zip(ax).fold(0.0f64, |m, (xi, yi)| m.max((yi - lambda * xi).abs())) / scale
}

/// Power iteration on `A + ΔI` from the all-ones vector. The shift makes
/// the iteration matrix non-negative with its top eigenvalue strictly
/// dominant in modulus, so bipartite graphs do not oscillate between `±λ₁`.
///
/// Stops once the Rayleigh quotient changes by less than `1e-12`
/// (relative) and the residual is at most `1e-8`, or after `10^5` steps.
/// Slow when the top of the spectrum is clustered; [`lambda_max`] uses
/// Lanczos instead and this stays as an independent check.
pub fn power_iteration(g: &Graph, exec: Execution) -> SpectralSummary {
    let n = g.n();
    if n == 0 || g.num_edges() == 0 {
        return SpectralSummary { lambda1: 0.0, method: SpectralMethod::Iterative, residual: Some(0.0), iterations: 0 };
    }
    let csr = Csr::new(g);
    let shift = g.max_degree() as f64;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut previous = f64::NAN;
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < POWER_MAX_ITERATIONS {
        iterations += 1;
        csr.apply(exec, &x, &mut y);
        // x has unit 2-norm, so x·Ax is the Rayleigh quotient
        lambda = dot(&x, &y);
        residual = inf_residual(&x, &y, lambda);
        let change = (lambda - previous).abs() / lambda.abs().max(1.0);
        if change < POWER_RAYLEIGH_TOL && residual <= POWER_RESIDUAL_TOL {
            break;
        }
        previous = lambda;
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += shift * xi;
        }
        let len = dot(&y, &y).sqrt();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / len;
        }
    }
    SpectralSummary { lambda1: lambda, method: SpectralMethod::Iterative, residual: Some(residual), iterations }
}

const LANCZOS_STEPS: usize = 300;
const LANCZOS_RESTARTS: usize = 20;

/// Lanczos from the all-ones vector, restarted from the Ritz vector until
/// its residual `‖Ay - θy‖∞ / ‖y‖∞` is at most `1e-8`.
///
/// No reorthogonalization is done; lost orthogonality only produces extra
/// copies of converged Ritz values, and the reported eigenvalue and
/// residual come from an explicit Rayleigh quotient of the final vector.
pub fn lanczos(g: &Graph, exec: Execution) -> SpectralSummary {
    let n = g.n();
    if n == 0 || g.num_edges() == 0 {
        return SpectralSummary { lambda1: 0.0, method: SpectralMethod::Iterative, residual: Some(0.0), iterations: 0 };
    }
    let csr = Csr::new(g);
    let mut start = vec![1.0; n];
    let mut ay = vec![0.0; n];
    let mut best = SpectralSummary { lambda1: 0.0, method: SpectralMethod::Iterative, residual: None, iterations: 0 };
    let mut iterations = 0;
    for _ in 0..LANCZOS_RESTARTS {
        let (mut y, steps) = lanczos_ritz_vector(&csr, exec, &start, LANCZOS_STEPS.min(n));
        iterations += 2 * steps + 1;
        let len = dot(&y, &y).sqrt();
        y.iter_mut().for_each(|v| *v /= len);
        csr.apply(exec, &y, &mut ay);
        let lambda = dot(&y, &ay);
        let residual = inf_residual(&y, &ay, lambda);
        if best.residual.is_none_or(|r| residual < r) {
            best = SpectralSummary { lambda1: lambda, method: SpectralMethod::Iterative, residual: Some(residual), iterations };
        }
        best.iterations = iterations;
        if residual <= POWER_RESIDUAL_TOL {
            break;
        }
        start = y;
    }
    best
}

/// One Lanczos run of at most `max_steps` steps; returns the Ritz vector of
/// the top Ritz value (rebuilt in a second pass) and the number of steps.
fn lanczos_ritz_vector(csr: &Csr, exec: Execution, start: &[f64], max_steps: usize) -> (Vec<f64>, usize) {
    let n = start.len();
    let norm = dot(start, start).sqrt();
    let (mut alphas, mut betas) = (Vec::new(), Vec::new());
    let mut q: Vec<f64> = start.iter().map(|v| v / norm).collect();
    let mut q_prev = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut last_theta = f64::NAN;
    // the recurrence, shared by both passes; returns beta_j
    let step = |q: &[f64], q_prev: &[f64], beta_prev: f64, w: &mut Vec<f64>| -> (f64, f64) {
        csr.apply(exec, q, w);
        for (wi, pi) in w.iter_mut().zip(q_prev) {
            *wi -= beta_prev * pi;
        }
        let alpha = dot(w, q);
        for (wi, qi) in w.iter_mut().zip(q) {
            *wi -= alpha * qi;
        }
        (alpha, dot(w, w).sqrt())
    };
    for j in 0..max_steps {
        let beta_prev = betas.last().copied().unwrap_or(0.0);
        let (alpha, beta) = step(&q, &q_prev, beta_prev, &mut w);
        alphas.push(alpha);
        let invariant = beta <= 1e-12 * alpha.abs().max(1.0);
        if j % 5 == 4 || invariant || j + 1 == max_steps {
            let theta = tridiagonal_top(&alphas, &betas);
            let settled = (theta - last_theta).abs() <= 1e-14 * theta.abs().max(1.0);
            last_theta = theta;
            if settled || invariant {
                break;
            }
        }
        if j + 1 == max_steps {
            break;
        }
        betas.push(beta);
        std::mem::swap(&mut q_prev, &mut q);
        for (qi, wi) in q.iter_mut().zip(&w) {
            *qi = wi / beta;
        }
    }
    let m = alphas.len();
    let t = DMatrix::from_fn(m, m, |i, j| match i.abs_diff(j) {
        0 => alphas[i],
        1 => betas[i.min(j)],
        _ => 0.0,
    });
    let eig = t.symmetric_eigen();
    let top = (0..m).max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b])).expect("m >= 1");
    let s = eig.eigenvectors.column(top);

    let mut y = vec![0.0; n];
    q = start.iter().map(|v| v / norm).collect();
    q_prev.iter_mut().for_each(|v| *v = 0.0);
    for j in 0..m {
        for (yi, qi) in y.iter_mut().zip(&q) {
            *yi += s[j] * qi;
        }
        if j + 1 == m {
            break;
        }
        let beta_prev = if j == 0 { 0.0 } else { betas[j - 1] };
        step(&q, &q_prev, beta_prev, &mut w);
        std::mem::swap(&mut q_prev, &mut q);
        for (qi, wi) in q.iter_mut().zip(&w) {
            *qi = wi / betas[j];
        }
    }
    (y, m)
}

/// Largest eigenvalue of the symmetric tridiagonal matrix with diagonal
/// `a` and off-diagonal `b`, by bisection on Sturm counts.
fn tridiagonal_top(a: &[f64], b: &[f64]) -> f64 {
    let m = a.len();
    let off = |i: usize| if i < b.len() && i + 1 < m { b[i].abs() } else { 0.0 };
    let radius = |i: usize| off(i) + if i > 0 { off(i - 1) } else { 0.0 };
    let mut lo = (0..m).map(|i| a[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let mut hi = (0..m).map(|i| a[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);
    // number of eigenvalues below x
    let below = |x: f64| {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..m {
            let b2 = if i > 0 { off(i - 1).powi(2) } else { 0.0 };
            d = a[i] - x - if i > 0 { b2 / d } else { 0.0 };
            if d == 0.0 {
                d = -f64::EPSILON * (x.abs() + 1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) == m {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}


/// `f_k = λ₁(T_k)` from `f_1 = 0` and `f_{j+1} = (f_j + √(f_j² + 4)) / 2`.
///
/// Computed in `f64`. The map is increasing with derivative below 1, and
/// the formula has no cancellation for `f >= 0`, so rounding errors stay
/// at a few ulps per step and do not amplify.
pub fn tk_lambda(k: usize) -> f64 {
    (1..k.max(1)).fold(0.0, |f, _| step_tk(f))
}

/// `[f_1, ..., f_{k_max}]`.
pub fn tk_lambda_sequence(k_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max);
    let mut f = 0.0;
    for k in 1..=k_max {
        if k > 1 {
            f = step_tk(f);
        }
        out.push(f);
    }
    out
}

/// One step of the `λ₁(T_k)` recurrence.
pub(crate) fn step_tk(f: f64) -> f64 {
    0.5 * (f + (f * f + 4.0).sqrt())
}

/// The `k x k` layer quotient `B = SᵀAS` of an atom with layer sizes
/// `a_1..a_k`, where `S` has entry `1/√a_i` on the vertices of layer `i`.
/// Off the diagonal `B_ij = √(a_i / a_j)` for `i < j`; the diagonal is zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientMatrix {
    pub k: usize,
    pub entries: Vec<Vec<f64>>,
    pub sizes: LayerSizeSequence,
}

pub fn quotient_matrix(sizes: &LayerSizeSequence) -> QuotientMatrix {
    let a = sizes.sizes();
    let k = a.len();
    let mut entries = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let b = (a[i] as f64 / a[j] as f64).sqrt();
            entries[i][j] = b;
            entries[j][i] = b;
        }
    }
    QuotientMatrix { k, entries, sizes: sizes.clone() }
}

impl QuotientMatrix {
    /// Largest eigenvalue, from a symmetric eigendecomposition.
    pub fn lambda1(&self) -> f64 {
        let m = DMatrix::from_fn(self.k, self.k, |i, j| self.entries[i][j]);
        m.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `𝟙ᵀB𝟙 / k = (2/k) Σ_{i<j} √(a_i/a_j)`.
pub fn quotient_sum(sizes: &LayerSizeSequence) -> f64 {
    2.0 / sizes.k() as f64 * sizes.ratio_sum()
}

/// The lower bound `k√k / (4√n) - 2` on `λ₁` of a k-atom with `n` vertices.
pub fn atom_lambda_lower(k: usize, n: usize) -> f64 {
    let (k, n) = (k as f64, n as f64);
    k * k.sqrt() / (4.0 * n.sqrt()) - 2.0
}

/// `SᵀAS` computed from the atom itself, for checking [`quotient_matrix`].
pub fn layer_compression(atom: &Atom) -> Result<Vec<Vec<f64>>> {
    let k = atom.k();
    let n = atom.n();
    if n == 0 {
        return Err(Error::InvalidAtom("empty atom".into()));
    }
    let mut layer_of = vec![0; n];
    for (i, layer) in atom.layers().iter().enumerate() {
        for &v in layer {
            layer_of[v] = i;
        }
    }
    let sizes: Vec<f64> = atom.layers().iter().map(|l| l.len() as f64).collect();
    let mut out = vec![vec![0.0; k]; k];
    for &(u, v) in atom.graph().edges() {
        let (i, j) = (layer_of[u], layer_of[v]);
        let w = 1.0 / (sizes[i] * sizes[j]).sqrt();
        out[i][j] += w;
        out[j][i] += w;
    }
    Ok(out)
}
