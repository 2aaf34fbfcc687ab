//! Matching and characteristic polynomials over path trees.
//!
//! The central check is `μ_G · μ_{T∖u} = μ_T · μ_{G∖u}` with `T = T(G, u)`.
//!
//! All polynomials are exact. Work is done in checked `i128` first and
//! repeated in `BigInt` only when a coefficient overflows.

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{dense, exact_with_fallback, Coeff, IntPolynomial};

/// Vertex cap for the subset recursion on graphs with cycles.
pub const MAX_MATCHING_VERTICES: usize = 30;
/// Vertex cap for the characteristic polynomial.
pub const MAX_CHARPOLY_VERTICES: usize = 30;
/// Vertex cap for direct matching enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 12;
/// Node cap for path trees.
pub const MAX_PATH_TREE_NODES: u64 = 1_000_000;
const MAX_SUBSET_STATES: usize = 1 << 22;

/// `μ_G(x) = Σ_M (-1)^|M| x^(n - 2|M|)` over all matchings `M`.
///
/// Forests of any size use a tree dynamic program. Other graphs use the
/// edge recursion `μ_G = μ_{G-e} - μ_{G-u-v}` unrolled at the lowest
/// remaining vertex `v`,
/// `μ_S = x μ_{S-v} - Σ_{w ~ v} μ_{S-v-w}`, memoized on vertex subsets.
pub fn matching_polynomial(g: &Graph) -> Result<IntPolynomial> {
    if g.is_forest() {
        return Ok(forest_matching_polynomial(g));
    }
    let masks = subset_masks(g)?;
    let full = low_bits(g.n());
    Ok(subset_polys(&masks, &[full])?.remove(0))
}

/// `(μ_G, μ_{G-u})` from one memo table.
fn matching_pair(g: &Graph, u: usize) -> Result<(IntPolynomial, IntPolynomial)> {
    if g.is_forest() {
        return Ok((forest_matching_polynomial(g), forest_matching_polynomial(&g.without_vertex(u))));
    }
    let masks = subset_masks(g)?;
    let full = low_bits(g.n());
    let mut both = subset_polys(&masks, &[full, full & !(1 << u)])?;
    let without = both.pop().expect("two results");
    Ok((both.pop().expect("two results"), without))
}

fn subset_masks(g: &Graph) -> Result<Vec<u64>> {
    if g.n() > MAX_MATCHING_VERTICES {
        return Err(Error::too_large("matching polynomial vertices", MAX_MATCHING_VERTICES, g.n()));
    }
    Ok(g.neighbor_masks().expect("n <= 30"))
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

enum Fail {
    Overflow,
    TooManyStates,
}

fn subset_polys(masks: &[u64], targets: &[u64]) -> Result<Vec<IntPolynomial>> {
    fn run<C: Coeff>(masks: &[u64], targets: &[u64]) -> std::result::Result<Vec<Vec<C>>, Fail> {
        let mut memo = FxHashMap::default();
        targets.iter().map(|&s| subset_mu(masks, s, &mut memo).map(|p| p.to_vec())).collect()
    }
    let to_result = |f: Fail| match f {
        Fail::Overflow => unreachable!("BigInt never overflows"),
        Fail::TooManyStates => Error::too_large("matching polynomial memo states", MAX_SUBSET_STATES, MAX_SUBSET_STATES + 1),
    };
    match run::<i128>(masks, targets) {
        Ok(ps) => Ok(ps.into_iter().map(|c| IntPolynomial::new(c.iter().map(Coeff::to_bigint).collect())).collect()),
        Err(Fail::TooManyStates) => Err(to_result(Fail::TooManyStates)),
        Err(Fail::Overflow) => {
            let ps = run::<BigInt>(masks, targets).map_err(to_result)?;
            Ok(ps.into_iter().map(IntPolynomial::new).collect())
        }
    }
}

fn subset_mu<'m, C: Coeff>(
    masks: &[u64],
    s: u64,
    memo: &'m mut FxHashMap<u64, Vec<C>>,
) -> std::result::Result<&'m [C], Fail> {
    if !memo.contains_key(&s) {
        let value = if s == 0 {
            dense::one()
        } else {
            let v = s.trailing_zeros() as usize;
            let rest = s & !(1 << v);
            let mut acc = dense::shift(subset_mu(masks, rest, memo)?);
            let mut partners = masks[v] & rest;
            while partners != 0 {
                let w = partners.trailing_zeros() as usize;
                partners &= partners - 1;
                let sub = subset_mu(masks, rest & !(1 << w), memo)?;
                acc = dense::sub(&acc, sub).ok_or(Fail::Overflow)?;
            }
            acc
        };
        if memo.len() >= MAX_SUBSET_STATES {
            return Err(Fail::TooManyStates);
        }
        memo.insert(s, value);
    }
    Ok(&memo[&s])
}

/// Tree dynamic program. For a node `v` with children `c`, `A_v = μ` of the
/// subtree and `B_v = μ` of the subtree without `v`:
/// `B_v = Π A_c` and `A_v = x B_v - Σ_c B_c Π_{c' ≠ c} A_{c'}`.
fn forest_matching_polynomial(g: &Graph) -> IntPolynomial {
    exact_with_fallback(|| forest_mu::<i128>(g), || forest_mu::<BigInt>(g))
}

fn forest_mu<C: Coeff>(g: &Graph) -> Option<Vec<C>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    // (P, Q) accumulate Π A_c and Σ_c B_c Π_{c'≠c} A_{c'} over finished children
    let mut prod: Vec<Vec<C>> = vec![dense::one(); n];
    let mut cross: Vec<Vec<C>> = vec![Vec::new(); n];
    let mut total = dense::one();
    for &v in order.iter().rev() {
        let b = std::mem::take(&mut prod[v]);
        let a = dense::sub(&dense::shift(&b), &cross[v])?;
        match parent[v] {
            usize::MAX => total = dense::mul(&total, &a)?,
            p => {
                let q = dense::add(&dense::mul(&cross[p], &a)?, &dense::mul(&prod[p], &b)?)?;
                cross[p] = q;
                prod[p] = dense::mul(&prod[p], &a)?;
            }
        }
    }
    Some(total)
}

/// `μ_G` by listing every matching. Slow; used as an independent check.
pub fn matching_polynomial_by_enumeration(g: &Graph) -> Result<IntPolynomial> {
    let n = g.n();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::too_large("matching enumeration vertices", MAX_ENUMERATION_VERTICES, n));
    }
    fn go(edges: &[(usize, usize)], i: usize, used: u64, size: usize, counts: &mut [i64]) {
        if i == edges.len() {
            counts[size] += 1;
            return;
        }
        go(edges, i + 1, used, size, counts);
        let (u, v) = edges[i];
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            go(edges, i + 1, used | 1 << u | 1 << v, size + 1, counts);
        }
    }
    let mut counts = vec![0i64; n / 2 + 1];
    go(g.edges(), 0, 0, 0, &mut counts);
    let mut coeffs = vec![0i64; n + 1];
    for (k, &m) in counts.iter().enumerate() {
        coeffs[n - 2 * k] = if k % 2 == 0 { m } else { -m };
    }
    Ok(IntPolynomial::from_i64s(&coeffs))
}

/// `φ_G(x) = det(xI - A)` by the division-free Samuelson–Berkowitz
/// recurrence over leading principal submatrices.
pub fn char_polynomial(g: &Graph) -> Result<IntPolynomial> {
    let n = g.n();
    if n > MAX_CHARPOLY_VERTICES {
        return Err(Error::too_large("characteristic polynomial vertices", MAX_CHARPOLY_VERTICES, n));
    }
    Ok(exact_with_fallback(|| berkowitz::<i128>(g), || berkowitz::<BigInt>(g)))
}

fn berkowitz<C: Coeff>(g: &Graph) -> Option<Vec<C>> {
    // p holds det(xI - A_r), highest power first. Going from A_r to A_{r+1}
    // (new row R, column C = R^T, diagonal 0) multiplies by the Toeplitz
    // matrix with first column (1, 0, -R C, -R A_r C, -R A_r^2 C, ...).
    let n = g.n();
    let mut p: Vec<C> = dense::one();
    let one = C::from_i64(1);
    for r in 0..n {
        let row: Vec<usize> = g.neighbors(r).iter().copied().filter(|&w| w < r).collect();
        let mut t: Vec<C> = vec![one.clone(), C::zero()];
        if r > 0 {
            // w = A_r^m C, kept dense over 0..r
            let mut w = vec![C::zero(); r];
            for &j in &row {
                w[j] = one.clone();
            }
            for _ in 0..r {
                let mut s = C::zero();
                for &j in &row {
                    s = s.checked_add(&w[j])?;
                }
                t.push(C::zero().checked_sub(&s)?);
                let mut next = vec![C::zero(); r];
                for (i, slot) in next.iter_mut().enumerate() {
                    for &j in g.neighbors(i) {
                        if j >= r {
                            break;
                        }
                        *slot = slot.checked_add(&w[j])?;
                    }
                }
                w = next;
            }
        }
        let mut q = vec![C::zero(); r + 2];
        for (i, slot) in q.iter_mut().enumerate() {
            for j in 0..=r.min(i) {
                if i - j < t.len() && !t[i - j].is_zero() && !p[j].is_zero() {
                    *slot = slot.checked_add(&t[i - j].checked_mul(&p[j])?)?;
                }
            }
        }
        p = q;
    }
    p.reverse();
    Some(p)
}

/// Largest root of `μ_G`. The matching polynomial is real-rooted, so the
/// certified root finder of [`IntPolynomial::largest_real_root`] applies.
pub fn mu_max_root(g: &Graph) -> Result<f64> {
    if g.n() == 0 {
        return Err(Error::InvalidArgument("the empty graph has no matching roots".into()));
    }
    Ok(matching_polynomial(g)?.largest_real_root().expect("degree >= 1"))
}

/// The path tree `T(G, u)`: one node per simple path of `G` starting at
/// `u`, each joined to the one-edge-shorter path it extends. Node `0` is
/// the root (the path `[u]`); nodes are numbered in depth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    tree: Graph,
    root: usize,
    path_labels: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// The path of `G` behind each node.
    pub fn path_labels(&self) -> &[Vec<usize>] {
        &self.path_labels
    }
}

pub fn path_tree(g: &Graph, u: usize) -> Result<RootedTree> {
    check_root(g, u)?;
    let size = path_tree_size(g, u)?;
    let mut labels: Vec<Vec<usize>> = Vec::with_capacity(size as usize);
    let mut edges = Vec::with_capacity(size as usize);
    let mut on_path = vec![false; g.n()];
    fn go(
        g: &Graph,
        node: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        labels: &mut Vec<Vec<usize>>,
        edges: &mut Vec<(usize, usize)>,
    ) {
        let end = *path.last().expect("non-empty path");
        for &w in g.neighbors(end) {
            if on_path[w] {
                continue;
            }
            on_path[w] = true;
            path.push(w);
            let child = labels.len();
            labels.push(path.clone());
            edges.push((node, child));
            go(g, child, path, on_path, labels, edges);
            path.pop();
            on_path[w] = false;
        }
    }
    on_path[u] = true;
    labels.push(vec![u]);
    go(g, 0, &mut vec![u], &mut on_path, &mut labels, &mut edges);
    let tree = Graph::from_edges(labels.len(), edges)?;
    Ok(RootedTree { tree, root: 0, path_labels: labels })
}

fn check_root(g: &Graph, u: usize) -> Result<()> {
    if u >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: g.n() });
    }
    if g.n() > 64 {
        return Err(Error::too_large("path tree source vertices", 64, g.n()));
    }
    Ok(())
}

/// Number of simple paths starting at `u`, the node count of `T(G, u)`.
/// Refuses when it exceeds [`MAX_PATH_TREE_NODES`].
pub fn path_tree_size(g: &Graph, u: usize) -> Result<u64> {
    check_root(g, u)?;
    let masks = g.neighbor_masks().expect("n <= 64");
    let mut memo: FxHashMap<(usize, u64), u64> = FxHashMap::default();
    fn count(masks: &[u64], w: usize, seen: u64, memo: &mut FxHashMap<(usize, u64), u64>) -> u64 {
        if let Some(&c) = memo.get(&(w, seen)) {
            return c;
        }
        let mut total = 1u64;
        let mut next = masks[w] & !seen;
        while next != 0 && total <= MAX_PATH_TREE_NODES {
            let x = next.trailing_zeros() as usize;
            next &= next - 1;
            total = total.saturating_add(count(masks, x, seen | 1 << x, memo));
        }
        memo.insert((w, seen), total);
        total
    }
    let size = count(&masks, u, 1 << u, &mut memo);
    if size > MAX_PATH_TREE_NODES {
        return Err(Error::too_large("path tree nodes", MAX_PATH_TREE_NODES as usize, size as usize));
    }
    Ok(size)
}

/// `(μ_T, μ_{T∖root})` for `T = T(G, u)`, without building `T`.
///
/// The subtree below the node for a path ending at `w` with vertex set `S`
/// depends only on `(w, S)`, so the tree dynamic program of
/// [`matching_polynomial`] is memoized on that pair.
pub fn path_tree_matching_polynomials(g: &Graph, u: usize) -> Result<(IntPolynomial, IntPolynomial)> {
    let size = path_tree_size(g, u)?;
    let masks = g.neighbor_masks().expect("checked by path_tree_size");
    // a forest on N nodes has fewer than 2^N matchings
    let small = if size < 120 { pathtree_mu::<i128>(&masks, u) } else { None };
    let (a, b) = match small {
        Some((a, b)) => (to_big(&a), to_big(&b)),
        None => pathtree_mu::<BigInt>(&masks, u).expect("BigInt never overflows"),
    };
    Ok((IntPolynomial::new(a), IntPolynomial::new(b)))
}

fn to_big(p: &[i128]) -> Vec<BigInt> {
    p.iter().map(Coeff::to_bigint).collect()
}

fn pathtree_mu<C: Coeff>(masks: &[u64], u: usize) -> Option<(Vec<C>, Vec<C>)> {
    struct Dp<C> {
        index: FxHashMap<(usize, u64), usize>,
        arena: Vec<(Vec<C>, Vec<C>)>,
    }
    fn node<C: Coeff>(masks: &[u64], w: usize, seen: u64, dp: &mut Dp<C>) -> Option<usize> {
        if let Some(&i) = dp.index.get(&(w, seen)) {
            return Some(i);
        }
        let mut children = Vec::new();
        let mut next = masks[w] & !seen;
        while next != 0 {
            let x = next.trailing_zeros() as usize;
            next &= next - 1;
            children.push(node(masks, x, seen | 1 << x, dp)?);
        }
        let mut prod: Vec<C> = dense::one();
        let mut cross: Vec<C> = Vec::new();
        for &c in &children {
            let (a, b) = &dp.arena[c];
            cross = dense::add(&dense::mul(&cross, a)?, &dense::mul(&prod, b)?)?;
            prod = dense::mul(&prod, a)?;
        }
        let a = dense::sub(&dense::shift(&prod), &cross)?;
        dp.arena.push((a, prod));
        dp.index.insert((w, seen), dp.arena.len() - 1);
        Some(dp.arena.len() - 1)
    }
    let mut dp = Dp { index: FxHashMap::default(), arena: Vec::new() };
    let root = node(masks, u, 1 << u, &mut dp)?;
    Some(dp.arena.swap_remove(root))
}

/// Checks `μ_G · μ_{T∖u} = μ_T · μ_{G∖u}` exactly, where `T = T(G, u)` and
/// `T∖u` drops the root of `T`.
pub fn verify_pathtree_identity(g: &Graph, u: usize) -> Result<bool> {
    let (mu_t, mu_t_minus_root) = path_tree_matching_polynomials(g, u)?;
    let (mu_g, mu_g_minus_u) = matching_pair(g, u)?;
    Ok(&mu_g * &mu_t_minus_root == &mu_t * &mu_g_minus_u)
}

/// Height of the largest binomial tree that embeds in `T(G, u)` with its
/// seed on the root, the embedding going away from the root.
///
/// Viewed from its seed, `T_j` is a root whose children carry `T_{j-1}`,
/// ..., `T_1`. So with `h` the answer below each child, sorted as
/// `h_1 >= h_2 >= ...`, `T_j` fits iff `h_i >= j - i` for `i < j`.
pub fn path_tree_binomial_depth(g: &Graph, u: usize) -> Result<usize> {
    path_tree_size(g, u)?;
    let masks = g.neighbor_masks().expect("checked by path_tree_size");
    let mut memo: FxHashMap<(usize, u64), usize> = FxHashMap::default();
    fn depth(masks: &[u64], w: usize, seen: u64, memo: &mut FxHashMap<(usize, u64), usize>) -> usize {
        if let Some(&d) = memo.get(&(w, seen)) {
            return d;
        }
        let mut hs = Vec::new();
        let mut next = masks[w] & !seen;
        while next != 0 {
            let x = next.trailing_zeros() as usize;
            next &= next - 1;
            hs.push(depth(masks, x, seen | 1 << x, memo));
        }
        let d = binomial_fit(hs);
        memo.insert((w, seen), d);
        d
    }
    Ok(depth(&masks, u, 1 << u, &mut memo))
}

/// Largest `j` such that `T_j` fits on a root whose children support
/// binomial trees of the given heights.
fn binomial_fit(mut child_heights: Vec<usize>) -> usize {
    child_heights.sort_unstable_by(|a, b| b.cmp(a));
    let mut j = 1;
    while (1..=j).all(|i| child_heights.get(i - 1).is_some_and(|&h| h >= j + 1 - i)) {
        j += 1;
    }
    j
}

/// [`path_tree_binomial_depth`] for an explicit rooted tree.
pub fn binomial_depth(t: &RootedTree) -> usize {
    fn go(g: &Graph, v: usize, parent: usize) -> usize {
        binomial_fit(g.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| go(g, w, v)).collect())
    }
    go(&t.tree, t.root, usize::MAX)
}
