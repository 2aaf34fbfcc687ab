//! Acceptance criteria, one PASS/FAIL line each with its wall time.
//!
//! Run with `cargo test --release --test acceptance`. Each criterion fails
//! if any check fails or if it overruns its time limit.

use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;

use grundy::atoms::{binomial_tree, enumerate_atoms, min_quotient_sum, Atom};
use grundy::bounds::{bound_edges, bound_spectral_recurrence, Bounds};
use grundy::coloring::{chromatic_number, grundy_bruteforce, grundy_exact};
use grundy::exec::{self, Execution};
use grundy::experiments::{run_sweep, Family, SweepConfig, SweepRow};
use grundy::graph::{derive_seed, enumerate_connected_graphs, enumerate_labeled_trees, random_connected, Graph};
use grundy::matching::{
    char_polynomial, matching_polynomial, matching_polynomial_by_enumeration, mu_max_root, path_tree, verify_pathtree_identity,
};
use grundy::spectral::{atom_lambda_lower, lambda_max, quotient_matrix, tk_lambda, tk_lambda_sequence};

const SLACK: f64 = 1e-8;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Result<String, String>, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Collects per-case results into a count or the first failure.
fn all_ok(results: impl IntoIterator<Item = Check>) -> Result<usize, String> {
    let mut count = 0;
    for r in results {
        r?;
        count += 1;
    }
    Ok(count)
}

/// Runs `f` on every connected labeled graph with `n` vertices.
fn connected<F>(n: usize, f: F) -> Vec<Check>
where
    F: Fn(&Graph) -> Check + Sync + Send,
{
    connected_where(n, |_| true, f)
}

fn connected_where<K, F>(n: usize, keep: K, f: F) -> Vec<Check>
where
    K: Fn(&Graph) -> bool + Sync + Send,
    F: Fn(&Graph) -> Check + Sync + Send,
{
    let corpus = enumerate_connected_graphs(n).expect("n <= 7");
    exec::filter_map_range(Execution::Parallel, 0..corpus.subset_count(), |s| {
        corpus.graph_at(s).filter(|g| keep(g)).map(|g| f(&g))
    })
}

fn connected_upto<F>(max_n: usize, f: F) -> Vec<Check>
where
    F: Fn(&Graph) -> Check + Sync + Send,
{
    (1..=max_n).flat_map(|n| connected(n, &f)).collect()
}

fn adjacency_lambda1(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    a.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn atoms_upto(k_max: usize, n_max: usize) -> Vec<Atom> {
    (1..=k_max).flat_map(|k| enumerate_atoms(k, n_max).expect("within caps")).collect()
}

/// AHU code of a tree rooted at `v`.
fn rooted_code(g: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| rooted_code(g, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism invariant of a tree: the least rooted code over all roots.
fn tree_code(g: &Graph) -> String {
    (0..g.n()).map(|r| rooted_code(g, r, usize::MAX)).min().unwrap_or_default()
}

fn criterion_1() -> Result<String, String> {
    let f = tk_lambda_sequence(1_000_000);
    let gap = |k: usize| (2.0 * (k - 1) as f64).sqrt() - f[k - 1];
    let n = all_ok((2..=1_000_000).map(|k| ensure(gap(k) >= 0.0, || format!("negative gap {} at k = {k}", gap(k)))))?;
    ensure(gap(1_000_000) < gap(1000), || format!("gap(10^6) = {} not below gap(10^3) = {}", gap(1_000_000), gap(1000)))?;
    Ok(format!("{n} gaps >= 0; gap(10^3) = {:.3e}, gap(10^6) = {:.3e}", gap(1000), gap(1_000_000)))
}

fn criterion_2() -> Result<String, String> {
    let mut worst = 0.0f64;
    for k in 1..=12 {
        let t = binomial_tree(k).map_err(|e| e.to_string())?;
        let lam = lambda_max(t.graph()).lambda1;
        let diff = (lam - tk_lambda(k)).abs();
        ensure(diff < 1e-7, || format!("k = {k}: |f_k - lambda1| = {diff:e}"))?;
        worst = worst.max(diff);
    }
    Ok(format!("k <= 12, max difference {worst:.2e}"))
}

/// The identity checked from an explicit path tree and enumerated matchings.
fn identity_by_oracle(g: &Graph) -> Check {
    for u in 0..g.n() {
        let t = path_tree(g, u).map_err(|e| e.to_string())?;
        let mu_t = matching_polynomial(t.tree()).map_err(|e| e.to_string())?;
        let mu_t_root = matching_polynomial(&t.tree().without_vertex(t.root())).map_err(|e| e.to_string())?;
        let mu_g = matching_polynomial_by_enumeration(g).map_err(|e| e.to_string())?;
        let mu_g_u = matching_polynomial_by_enumeration(&g.without_vertex(u)).map_err(|e| e.to_string())?;
        ensure(&mu_g * &mu_t_root == &mu_t * &mu_g_u, || format!("identity fails at root {u} of {:?}", g.edges()))?;
        ensure(matches!(verify_pathtree_identity(g, u), Ok(true)), || format!("library check disagrees at root {u} of {:?}", g.edges()))?;
    }
    Ok(())
}

fn criterion_3() -> Result<String, String> {
    let corpus = all_ok(connected_upto(6, identity_by_oracle))?;
    let seeds: Vec<u64> = (0..500).collect();
    let random = exec::map_slice(Execution::Parallel, &seeds, |&i| identity_by_oracle(&random_connected(7, derive_seed(42, 7, i))));
    let random = all_ok(random)?;
    Ok(format!("{corpus} connected graphs n <= 6 and {random} random graphs n = 7, every root"))
}

fn criterion_4() -> Result<String, String> {
    let mut trees = 0;
    for n in 1..=9 {
        let mut iter = enumerate_labeled_trees(n).map_err(|e| e.to_string())?.peekable();
        while iter.peek().is_some() {
            let chunk: Vec<Graph> = iter.by_ref().take(1 << 16).collect();
            let results = exec::map_slice(Execution::Parallel, &chunk, |t| {
                let mu = matching_polynomial(t).map_err(|e| e.to_string())?;
                let phi = char_polynomial(t).map_err(|e| e.to_string())?;
                ensure(mu == phi, || format!("mu != phi on tree {:?}", t.edges()))
            });
            trees += all_ok(results)?;
        }
    }
    let non_trees = (1..=6).flat_map(|n| {
        connected_where(n, |g| !g.is_tree(), |g| {
            let mu = matching_polynomial_by_enumeration(g).map_err(|e| e.to_string())?;
            let phi = char_polynomial(g).map_err(|e| e.to_string())?;
            ensure(mu != phi, || format!("mu = phi on non-tree {:?}", g.edges()))
        })
    });
    let non_trees = all_ok(non_trees)?;
    Ok(format!("{trees} labeled trees n <= 9 with mu = phi; {non_trees} connected non-trees n <= 6 with mu != phi"))
}

fn criterion_5() -> Result<String, String> {
    let atoms = atoms_upto(5, 12);
    let tk_codes: Vec<String> = (1..=5).map(|k| tree_code(binomial_tree(k).unwrap().graph())).collect();
    let results = exec::map_slice(Execution::Parallel, &atoms, |a| {
        let g = a.graph();
        let lam = adjacency_lambda1(g);
        let mu = mu_max_root(g).map_err(|e| e.to_string())?;
        let f = tk_lambda(a.k());
        ensure(lam >= mu - SLACK, || format!("lambda1 {lam} < mu1 {mu} on {:?}", g.edges()))?;
        ensure(mu >= f - SLACK, || format!("mu1 {mu} < f_k {f} on {:?}", g.edges()))?;
        let is_tk = g.is_tree() && tree_code(g) == tk_codes[a.k() - 1];
        let equal = (mu - f).abs() < SLACK;
        ensure(equal == is_tk, || format!("mu1 = f_k is {equal} but T_k is {is_tk} on {:?}", g.edges()))?;
        Ok(())
    });
    let n = all_ok(results)?;
    let with_tk = atoms.iter().filter(|a| a.graph().is_tree() && tree_code(a.graph()) == tk_codes[a.k() - 1]).count();
    ensure(with_tk == 4, || format!("expected T_1..T_4 among atoms with n <= 12, found {with_tk}"))?;
    Ok(format!("{n} atoms with k <= 5, n <= 12"))
}

fn criterion_6() -> Result<String, String> {
    let mut total = 0;
    for n in 1..=7 {
        total += all_ok(connected(n, |g| {
            let exact = grundy_exact(g);
            let brute = grundy_bruteforce(g).map_err(|e| e.to_string())?;
            ensure(exact.exact() == Some(brute), || format!("exact {:?} vs brute force {brute} on {:?}", exact.value, g.edges()))?;
            ensure(exact.witness.verify(g), || format!("bad witness on {:?}", g.edges()))
        }))?;
    }
    for k in 1..=5 {
        let v = grundy_exact(binomial_tree(k).unwrap().graph()).exact();
        ensure(v == Some(k), || format!("Gamma(T_{k}) = {v:?}"))?;
    }
    for a in 1..=4 {
        for b in 1..=4 {
            let v = grundy_exact(&Graph::complete_bipartite(a, b)).exact();
            ensure(v == Some(2), || format!("Gamma(K_{a},{b}) = {v:?}"))?;
        }
    }
    Ok(format!("{total} connected graphs n <= 7; T_1..T_5; K_(m,n) for m, n <= 4"))
}

fn criterion_7() -> Result<String, String> {
    let mut total = 0;
    for n in 1..=7 {
        total += all_ok(connected(n, |g| {
            let gamma = grundy_exact(g).exact().ok_or("no exact Grundy value")? as f64;
            let lam = lambda_max(g).lambda1;
            let mu = mu_max_root(g).map_err(|e| e.to_string())?;
            let bounds = Bounds::evaluate(g.n(), g.num_edges(), g.max_degree(), g.degeneracy(), lam, Some(mu));
            for (name, e) in bounds.entries() {
                if let (true, Some(v)) = (e.applicable, e.value) {
                    ensure(gamma <= v.as_f64() + 1e-9, || format!("{name} = {v} < Gamma = {gamma} on {:?}", g.edges()))?;
                }
            }
            let chi = chromatic_number(g).exact().ok_or("no exact chromatic number")? as f64;
            ensure(chi <= lam + 1.0 + 1e-9, || format!("chi {chi} above lambda1 + 1 on {:?}", g.edges()))
        }))?;
    }
    for k in 1..=5 {
        let t = binomial_tree(k).unwrap();
        let b = bound_spectral_recurrence(mu_max_root(t.graph()).map_err(|e| e.to_string())?);
        let gamma = grundy_exact(t.graph()).exact();
        ensure(gamma == Some(b), || format!("T_{k}: recurrence bound {b}, Gamma {gamma:?}"))?;
    }
    for n in 1..=8 {
        let g = Graph::complete(n);
        let b = bound_edges(g.num_edges(), lambda_max(&g).lambda1, n);
        let gamma = grundy_exact(&g).exact();
        ensure((b - n as f64).abs() < 1e-9 && gamma == Some(n), || format!("K_{n}: edges bound {b}, Gamma {gamma:?}"))?;
    }
    Ok(format!("{total} connected graphs n <= 7; tight on T_1..T_5 and K_1..K_8"))
}

fn criterion_8() -> Result<String, String> {
    let atoms = atoms_upto(5, 12);
    let results = exec::map_slice(Execution::Parallel, &atoms, |a| {
        let sizes: Vec<f64> = a.layers().iter().map(|l| l.len() as f64).collect();
        let k = sizes.len();
        let b = DMatrix::from_fn(k, k, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => (sizes[i] / sizes[j]).sqrt(),
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => (sizes[j] / sizes[i]).sqrt(),
        });
        let lib = quotient_matrix(&a.layer_sizes());
        let same = (0..k).all(|i| (0..k).all(|j| (lib.entries[i][j] - b[(i, j)]).abs() < 1e-12));
        ensure(same, || format!("quotient matrix differs on {:?}", a.graph().edges()))?;
        let lam = adjacency_lambda1(a.graph());
        let lam_b = b.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let rayleigh = b.sum() / k as f64;
        let lower = atom_lambda_lower(k, a.n());
        ensure(lam >= lam_b - SLACK && lam_b >= rayleigh - SLACK, || {
            format!("chain {lam} >= {lam_b} >= {rayleigh} fails on {:?}", a.graph().edges())
        })?;
        ensure(lam >= lower - SLACK, || format!("lambda1 {lam} below size bound {lower} on {:?}", a.graph().edges()))
    });
    let n = all_ok(results)?;
    Ok(format!("{n} atoms with k <= 5, n <= 12"))
}

/// Layer-size sequences of k-atoms on n vertices: `a_1 = 1` and each
/// later layer is no larger than everything before it.
fn layer_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn grow(n: usize, k: usize, seq: &mut Vec<usize>, sum: usize, out: &mut Vec<Vec<usize>>) {
        if seq.len() == k {
            if sum == n {
                out.push(seq.clone());
            }
            return;
        }
        let left = k - seq.len() - 1;
        for a in 1..=sum.min(n - sum) {
            if n - sum - a >= left {
                seq.push(a);
                grow(n, k, seq, sum + a, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= 1 {
        grow(n, k, &mut vec![1], 1, &mut out);
    }
    out
}

fn criterion_9() -> Result<String, String> {
    let mut pairs = 0;
    for n in 1..=14 {
        for k in 1..=n {
            let seqs = layer_sequences(n, k);
            if seqs.is_empty() {
                ensure(min_quotient_sum(n, k).is_none(), || format!("library finds a sequence for n = {n}, k = {k}"))?;
                continue;
            }
            let value = |s: &[usize]| {
                (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| (s[i] as f64 / s[j] as f64).sqrt()).sum::<f64>()
            };
            let best = seqs.iter().map(|s| value(s)).fold(f64::INFINITY, f64::min);
            for s in &seqs {
                if value(s) <= best + 1e-12 {
                    ensure(s.windows(2).all(|w| w[0] <= w[1]), || format!("n = {n}, k = {k}: minimizer {s:?} decreases"))?;
                }
            }
            let lib = min_quotient_sum(n, k).ok_or(format!("library finds no sequence for n = {n}, k = {k}"))?;
            ensure((lib.value - best).abs() < 1e-9 && lib.argmin.is_non_decreasing(), || {
                format!("n = {n}, k = {k}: library minimum {} at {:?}, expected {best}", lib.value, lib.argmin.sizes())
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} valid (n, k) pairs with n <= 14"))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn criterion_10() -> Result<String, String> {
    let config = SweepConfig {
        family: Family::SparseCOverN,
        c: Some(2.0),
        p_exponent: None,
        n_values: vec![1_000, 10_000, 100_000],
        trials: 10,
        seed: 42,
        orderings: 32,
        max_vertices: 10_000_000,
    };
    let out = run_sweep(&config).map_err(|e| e.to_string())?;
    ensure(!out.truncated && out.rows.len() == 30, || format!("{} rows, truncated {}", out.rows.len(), out.truncated))?;
    for r in &out.rows {
        let v = r.violations();
        ensure(v.is_empty(), || format!("first-fit above {v:?} at n = {}, trial {}", r.n, r.trial))?;
    }
    let within = |r: &SweepRow| {
        let scale = (r.max_degree as f64).sqrt().max(r.n as f64 * config.edge_probability(r.n));
        (r.lambda1 - scale).abs() <= 0.25 * scale
    };
    let hits = out.rows.iter().filter(|r| within(r)).count();
    ensure(hits * 10 >= out.rows.len() * 8, || format!("(a) lambda1 near max(sqrt(Delta), np) in {hits}/30 trials"))?;
    let mut ratios = Vec::new();
    for &n in &config.n_values {
        let rows: Vec<&SweepRow> = out.rows.iter().filter(|r| r.n == n).collect();
        ratios.push(median(
            rows.iter().map(|r| r.bound("spectral_recurrence").unwrap_or(f64::NAN) / r.ref_lnn_lnlnn.unwrap_or(f64::NAN)).collect(),
        ));
    }
    ensure(ratios.windows(2).all(|w| w[1] <= w[0]), || format!("(b) median ratios {ratios:?} increase"))?;
    let big: Vec<&SweepRow> = out.rows.iter().filter(|r| r.n == 100_000).collect();
    let below = big.iter().filter(|r| r.bound("spectral_recurrence").is_some_and(|b| b < (r.max_degree + 1) as f64)).count();
    ensure(below * 10 >= big.len() * 9, || format!("(c) spectral bound below Delta + 1 in {below}/{} trials", big.len()))?;
    Ok(format!(
        "(a) {hits}/30 within 25%; (b) median ratios {:.3}, {:.3}, {:.3}; (c) {below}/{} below Delta + 1",
        ratios[0],
        ratios[1],
        ratios[2],
        big.len()
    ))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_grundy")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("grundy {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok(out.stdout)
}

fn criterion_11() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("sweep.toml");
    std::fs::write(&config, "family = \"sparse_c_over_n\"\nc = 2.0\nn_values = [100, 1000, 10000]\ntrials = 3\nseed = 42\n")
        .map_err(|e| e.to_string())?;
    let config = config.to_str().ok_or("non-UTF-8 temp path")?;
    let sweep = [cli(&["sweep", config])?, cli(&["sweep", config])?, cli(&["--sequential", "sweep", config])?];
    ensure(sweep[0] == sweep[1] && sweep[1] == sweep[2], || "sweep output differs between runs".into())?;
    ensure(sweep[0].iter().filter(|&&b| b == b'\n').count() == 10, || "sweep should print a header and 9 rows".into())?;
    let tk = [cli(&["tk", "--k-max", "100000"])?, cli(&["tk", "--k-max", "100000"])?];
    ensure(tk[0] == tk[1], || "tk output differs between runs".into())?;
    Ok(format!("sweep ({} bytes, 3 runs) and tk ({} bytes, 2 runs) byte-identical", sweep[0].len(), tk[0].len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("tk sandwich", criterion_1, 1),
        ("recurrence matches lambda1(T_k)", criterion_2, 10),
        ("path-tree identity", criterion_3, 300),
        ("forest iff mu = phi", criterion_4, 120),
        ("atom eigenvalue chain", criterion_5, 300),
        ("exact Grundy engines agree", criterion_6, 600),
        ("bound soundness and tightness", criterion_7, 600),
        ("interlacing and size bound", criterion_8, 60),
        ("minimizing layer sizes non-decreasing", criterion_9, 60),
        ("random-graph trends", criterion_10, 300),
        ("deterministic CLI output", criterion_11, 300),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            ensure(elapsed <= Duration::from_secs(limit), || format!("took {elapsed:.1?}, limit {limit} s")).map(|()| detail)
        });
        let (status, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!("{status} {:>2} {name} [{:.2} s / {limit} s]: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
