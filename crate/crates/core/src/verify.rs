//! Invariant suites behind `grundy verify`.
//!
//! Each suite checks a few named properties over a fixed corpus and
//! reports how many cases were checked and the first counterexample.

use serde::Serialize;

use crate::atoms::{binomial_tree, enumerate_atoms, min_quotient_sum, near_minimizers, valid_sequences, Atom};
use crate::bounds::{bound_edges, bound_report, bound_spectral_recurrence, ExactBudget};
use crate::coloring::{grundy_bruteforce, grundy_exact};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::{derive_seed, enumerate_connected_graphs, enumerate_labeled_trees, random_connected, Graph};
use crate::matching::{char_polynomial, matching_polynomial, mu_max_root, path_tree_binomial_depth, verify_pathtree_identity};
use crate::spectral::{atom_lambda_lower, lambda_max, layer_compression, quotient_matrix, quotient_sum, tk_lambda, tk_lambda_sequence};

/// Suite names with the corpus each one covers.
pub const SUITES: [(&str, &str); 9] = [
    ("tk-sandwich", "0 <= sqrt(2(k-1)) - f_k for 2 <= k <= 10^6, and the gap shrinks"),
    ("tk-recurrence", "f_k equals lambda1 of the binomial tree T_k for k <= 12"),
    ("pathtree-identity", "path-tree matching identity on connected graphs n <= 6 (every root) and 500 random graphs n = 7"),
    ("forest-mu-phi", "mu = phi on labeled trees n <= 8; mu != phi on connected non-trees n <= 6"),
    ("grundy-engines", "exact and brute-force Grundy agree on connected graphs n <= 6; T_k and K_{m,n} values"),
    ("bounds-soundness", "every proven bound is at least the exact Grundy number on connected graphs n <= 6; tightness cases"),
    ("atom-chain", "lambda1 >= mu1 >= f_k on atoms with k <= 5, n <= 12; equality only for T_k"),
    ("interlacing", "lambda1 >= lambda1(B) >= 1'B1/k and the size bound on atoms with k <= 5, n <= 12"),
    ("layer-sizes", "minimizing layer-size sequences are non-decreasing for n <= 14"),
];

const SLACK: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_outcomes(property: &str, outcomes: Vec<std::result::Result<(), String>>) -> Self {
        let checked = outcomes.len() as u64;
        let mut failures = 0;
        let mut first_failure = None;
        for o in outcomes {
            if let Err(msg) = o {
                failures += 1;
                first_failure.get_or_insert(msg);
            }
        }
        PropertyResult { property: property.to_string(), checked, failures, first_failure }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }
}

/// Runs one suite by name; `"all"` is not accepted here.
pub fn run_suite(name: &str, exec: Execution) -> Result<SuiteReport> {
    let properties = match name {
        "tk-sandwich" => tk_sandwich(),
        "tk-recurrence" => tk_recurrence(),
        "pathtree-identity" => pathtree_identity(exec)?,
        "forest-mu-phi" => forest_mu_phi(exec)?,
        "grundy-engines" => grundy_engines(exec)?,
        "bounds-soundness" => bounds_soundness(exec)?,
        "atom-chain" => atom_chain(exec)?,
        "interlacing" => interlacing(exec)?,
        "layer-sizes" => layer_sizes(),
        _ => return Err(Error::InvalidArgument(format!("unknown suite {name:?}"))),
    };
    Ok(SuiteReport { suite: name.to_string(), properties })
}

pub fn is_suite(name: &str) -> bool {
    SUITES.iter().any(|(s, _)| *s == name)
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Applies `f` to every labeled connected graph with at most `max_n` vertices.
fn over_connected_upto<F>(max_n: usize, exec: Execution, f: F) -> Result<Vec<std::result::Result<(), String>>>
where
    F: Fn(&Graph) -> std::result::Result<(), String> + Sync + Send,
{
    over_connected_where(max_n, exec, |_| true, f)
}

/// Like [`over_connected_upto`], skipping graphs that fail `keep`.
fn over_connected_where<K, F>(max_n: usize, exec: Execution, keep: K, f: F) -> Result<Vec<std::result::Result<(), String>>>
where
    K: Fn(&Graph) -> bool + Sync + Send,
    F: Fn(&Graph) -> std::result::Result<(), String> + Sync + Send,
{
    let mut out = Vec::new();
    for n in 1..=max_n {
        let corpus = enumerate_connected_graphs(n)?;
        out.extend(exec::filter_map_range(exec, 0..corpus.subset_count(), |s| {
            corpus.graph_at(s).filter(|g| keep(g)).map(|g| f(&g))
        }));
    }
    Ok(out)
}

fn tk_sandwich() -> Vec<PropertyResult> {
    let f = tk_lambda_sequence(1_000_000);
    let gap = |k: usize| (2.0 * (k - 1) as f64).sqrt() - f[k - 1];
    let nonneg = (2..=f.len()).map(|k| check(gap(k) >= 0.0, || format!("k = {k}: gap {}", gap(k)))).collect();
    vec![
        PropertyResult::from_outcomes("gap >= 0", nonneg),
        PropertyResult::from_outcomes(
            "gap(10^6) < gap(10^3)",
            vec![check(gap(1_000_000) < gap(1000), || format!("{} vs {}", gap(1_000_000), gap(1000)))],
        ),
    ]
}

fn tk_recurrence() -> Vec<PropertyResult> {
    let outcomes = (1..=12)
        .map(|k| {
            let t = binomial_tree(k).map_err(|e| e.to_string())?;
            let lam = lambda_max(t.graph()).lambda1;
            check((lam - tk_lambda(k)).abs() < 1e-7, || format!("k = {k}: lambda1 {lam} vs f_k {}", tk_lambda(k)))
        })
        .collect();
    vec![PropertyResult::from_outcomes("|f_k - lambda1(T_k)| < 1e-7", outcomes)]
}

fn identity_all_roots(g: &Graph) -> std::result::Result<(), String> {
    for u in 0..g.n() {
        match verify_pathtree_identity(g, u) {
            Ok(true) => {}
            Ok(false) => return Err(format!("identity fails at root {u} of {:?}", g.edges())),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

fn pathtree_identity(exec: Execution) -> Result<Vec<PropertyResult>> {
    let corpus = over_connected_upto(6, exec, identity_all_roots)?;
    let seeds: Vec<u64> = (0..500).collect();
    let random = exec::map_slice(exec, &seeds, |&i| identity_all_roots(&random_connected(7, derive_seed(2024, 7, i))));
    Ok(vec![
        PropertyResult::from_outcomes("identity on connected graphs n <= 6", corpus),
        PropertyResult::from_outcomes("identity on random connected graphs n = 7", random),
    ])
}

fn mu_phi_equal(g: &Graph) -> std::result::Result<bool, String> {
    let mu = matching_polynomial(g).map_err(|e| e.to_string())?;
    let phi = char_polynomial(g).map_err(|e| e.to_string())?;
    Ok(mu == phi)
}

fn forest_mu_phi(exec: Execution) -> Result<Vec<PropertyResult>> {
    let mut trees = Vec::new();
    for n in 1..=8 {
        let all: Vec<Graph> = enumerate_labeled_trees(n)?.collect();
        trees.extend(exec::map_slice(exec, &all, |t| match mu_phi_equal(t) {
            Ok(eq) => check(eq, || format!("mu != phi on tree {:?}", t.edges())),
            Err(e) => Err(e),
        }));
    }
    let non_trees = over_connected_where(6, exec, |g| !g.is_tree(), |g| {
        match mu_phi_equal(g) {
            Ok(eq) => check(!eq, || format!("mu = phi on non-tree {:?}", g.edges())),
            Err(e) => Err(e),
        }
    })?;
    Ok(vec![
        PropertyResult::from_outcomes("mu = phi on trees n <= 8", trees),
        PropertyResult::from_outcomes("mu != phi on connected non-trees n <= 6", non_trees),
    ])
}

fn grundy_engines(exec: Execution) -> Result<Vec<PropertyResult>> {
    let agree = over_connected_upto(6, exec, |g| {
        let exact = grundy_exact(g);
        let brute = grundy_bruteforce(g).map_err(|e| e.to_string())?;
        check(exact.exact() == Some(brute) && exact.witness.verify(g), || {
            format!("exact {:?} vs brute force {brute} on {:?}", exact.value, g.edges())
        })
    })?;
    let trees = (1..=5)
        .map(|k| {
            let t = binomial_tree(k).map_err(|e| e.to_string())?;
            let v = grundy_exact(t.graph()).exact();
            check(v == Some(k), || format!("Gamma(T_{k}) = {v:?}"))
        })
        .collect();
    let bipartite = (1..=4)
        .flat_map(|a| (1..=4).map(move |b| (a, b)))
        .map(|(a, b)| {
            let v = grundy_exact(&Graph::complete_bipartite(a, b)).exact();
            check(v == Some(2), || format!("Gamma(K_{a},{b}) = {v:?}"))
        })
        .collect();
    Ok(vec![
        PropertyResult::from_outcomes("grundy_exact = grundy_bruteforce", agree),
        PropertyResult::from_outcomes("Gamma(T_k) = k", trees),
        PropertyResult::from_outcomes("Gamma(K_{m,n}) = 2", bipartite),
    ])
}

fn bounds_soundness(exec: Execution) -> Result<Vec<PropertyResult>> {
    let sound = over_connected_upto(6, exec, |g| {
        let report = bound_report(g, "", ExactBudget::default());
        let v = report.violations();
        check(report.exact_grundy.is_some() && v.is_empty(), || format!("{:?}: {v:?}", g.edges()))
    })?;
    let recurrence = (1..=5)
        .map(|k| {
            let t = binomial_tree(k).map_err(|e| e.to_string())?;
            let mu = mu_max_root(t.graph()).map_err(|e| e.to_string())?;
            let b = bound_spectral_recurrence(mu);
            check(b == k, || format!("recurrence bound {b} on T_{k}"))
        })
        .collect();
    let edges = (2..=8)
        .map(|n| {
            let b = bound_edges(n * (n - 1) / 2, lambda_max(&Graph::complete(n)).lambda1, n);
            check((b - n as f64).abs() < SLACK, || format!("edges bound {b} on K_{n}"))
        })
        .collect();
    Ok(vec![
        PropertyResult::from_outcomes("proven bounds >= Gamma", sound),
        PropertyResult::from_outcomes("recurrence bound tight on T_k", recurrence),
        PropertyResult::from_outcomes("edges bound tight on K_n", edges),
    ])
}

fn atoms_upto(k_max: usize, n_max: usize) -> Result<Vec<Atom>> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        out.extend(enumerate_atoms(k, n_max)?);
    }
    Ok(out)
}

/// Whether an atom is the binomial tree: a tree on `2^(k-1)` vertices
/// containing `T_k` rooted somewhere.
pub fn is_binomial_tree(atom: &Atom) -> bool {
    let k = atom.k();
    let g = atom.graph();
    g.is_tree() && g.n() == 1 << (k - 1) && (0..g.n()).any(|u| path_tree_binomial_depth(g, u).is_ok_and(|d| d >= k))
}

fn atom_chain(exec: Execution) -> Result<Vec<PropertyResult>> {
    let atoms = atoms_upto(5, 12)?;
    let outcomes = exec::map_slice(exec, &atoms, |a| {
        let lam = lambda_max(a.graph()).lambda1;
        let mu = mu_max_root(a.graph()).map_err(|e| e.to_string())?;
        let f = tk_lambda(a.k());
        check(lam >= mu - SLACK && mu >= f - SLACK, || format!("lambda1 {lam}, mu1 {mu}, f_k {f} on {:?}", a.graph().edges()))?;
        let equal = (mu - f).abs() < SLACK;
        check(equal == is_binomial_tree(a), || format!("mu1 = f_k is {equal} on {:?}", a.graph().edges()))
    });
    Ok(vec![PropertyResult::from_outcomes("lambda1 >= mu1 >= f_k, equality only for T_k", outcomes)])
}

fn interlacing(exec: Execution) -> Result<Vec<PropertyResult>> {
    let atoms = atoms_upto(5, 12)?;
    let outcomes = exec::map_slice(exec, &atoms, |a| {
        let sizes = a.layer_sizes();
        let b = quotient_matrix(&sizes);
        let sas = layer_compression(a).map_err(|e| e.to_string())?;
        let same = b.entries.iter().flatten().zip(sas.iter().flatten()).all(|(x, y)| (x - y).abs() < 1e-12);
        check(same, || format!("quotient mismatch on {:?}", a.graph().edges()))?;
        let lam = lambda_max(a.graph()).lambda1;
        let lb = b.lambda1();
        let q = quotient_sum(&sizes);
        let lower = atom_lambda_lower(a.k(), a.n());
        check(lam >= lb - SLACK && lb >= q - SLACK && lam >= lower - SLACK, || {
            format!("lambda1 {lam}, lambda1(B) {lb}, 1'B1/k {q}, size bound {lower} on {:?}", a.graph().edges())
        })
    });
    Ok(vec![PropertyResult::from_outcomes("interlacing chain and size bound", outcomes)])
}

fn layer_sizes() -> Vec<PropertyResult> {
    let mut outcomes = Vec::new();
    for n in 1..=14 {
        for k in 1..=n {
            if valid_sequences(n, k).is_empty() {
                continue;
            }
            let Some(min) = min_quotient_sum(n, k) else { continue };
            let all_sorted = near_minimizers(n, k, 1e-12).iter().all(|s| s.is_non_decreasing());
            outcomes.push(check(min.argmin.is_non_decreasing() && all_sorted, || {
                format!("n = {n}, k = {k}: argmin {:?}", min.argmin.sizes())
            }));
        }
    }
    vec![PropertyResult::from_outcomes("argmin is non-decreasing", outcomes)]
}
