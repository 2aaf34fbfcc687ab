//! k-atoms with the "exactly one edge" definition.
//!
//! A 1-atom is a single vertex, its seed. A (k+1)-atom is a k-atom plus a new
//! independent layer such that every old vertex has exactly one neighbor in
//! the new layer and every new vertex has at least one old neighbor. Layers
//! are stored in construction order, so `layers[0] == [seed]`.
//!
//! Atoms built here number their vertices layer by layer, so every layer is a
//! contiguous index range.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_BINOMIAL_K: usize = 24;
pub const MAX_ENUMERATION_K: usize = 5;
pub const MAX_ENUMERATION_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AtomRepr", into = "AtomRepr")]
pub struct Atom {
    graph: Graph,
    layers: Vec<Vec<usize>>,
    seed: usize,
}

#[derive(Serialize, Deserialize)]
struct AtomRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    layers: Vec<Vec<usize>>,
    seed: usize,
}

impl TryFrom<AtomRepr> for Atom {
    type Error = Error;

    fn try_from(r: AtomRepr) -> Result<Self> {
        let graph = Graph::from_edges(r.n, r.edges)?;
        Atom::new(graph, r.layers, r.seed)
    }
}

impl From<Atom> for AtomRepr {
    fn from(a: Atom) -> Self {
        AtomRepr { n: a.graph.n(), edges: a.graph.edges().to_vec(), layers: a.layers, seed: a.seed }
    }
}

impl Atom {
    /// Validates the layering and the seed.
    pub fn new(graph: Graph, layers: Vec<Vec<usize>>, seed: usize) -> Result<Self> {
        if !is_atom(&graph, &layers) {
            return Err(Error::InvalidAtom("layers do not form an atom".into()));
        }
        if layers[0] != [seed] {
            return Err(Error::InvalidAtom(format!("seed {seed} is not the first layer")));
        }
        Ok(Atom { graph, layers, seed })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    /// The level `k` of the atom.
    pub fn k(&self) -> usize {
        self.layers.len()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn layer_sizes(&self) -> LayerSizeSequence {
        LayerSizeSequence { sizes: self.layers.iter().map(Vec::len).collect() }
    }

    /// Last layer first, then backwards to the seed. First-fit along this
    /// ordering gives every vertex of layer `i` the color `k - i + 1`, so the
    /// seed receives color `k`.
    pub fn grundy_ordering(&self) -> Vec<usize> {
        self.layers.iter().rev().flatten().copied().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("atoms always serialize")
    }
}

/// Whether `layers` (in construction order) make `g` an atom of level
/// `layers.len()`. Returns `false` if `layers` is not a partition of `V(g)`.
pub fn is_atom(g: &Graph, layers: &[Vec<usize>]) -> bool {
    let n = g.n();
    let Some(first) = layers.first() else { return false };
    if first.len() != 1 {
        return false;
    }
    let mut layer_of = vec![usize::MAX; n];
    for (i, layer) in layers.iter().enumerate() {
        if layer.is_empty() {
            return false;
        }
        for &v in layer {
            if v >= n || layer_of[v] != usize::MAX {
                return false;
            }
            layer_of[v] = i;
        }
    }
    if layer_of.contains(&usize::MAX) {
        return false;
    }
    // Every edge joins two layers; a vertex of layer i must see exactly one
    // vertex of each later layer, and (unless it is the seed) at least one
    // of the earlier layers.
    let k = layers.len();
    let mut later = vec![0usize; k];
    for v in 0..n {
        later.iter_mut().for_each(|c| *c = 0);
        let mut has_earlier = false;
        for &w in g.neighbors(v) {
            let (lv, lw) = (layer_of[v], layer_of[w]);
            match lw.cmp(&lv) {
                std::cmp::Ordering::Equal => return false,
                std::cmp::Ordering::Less => has_earlier = true,
                std::cmp::Ordering::Greater => later[lw] += 1,
            }
        }
        let lv = layer_of[v];
        if (lv > 0 && !has_earlier) || later[lv + 1..].iter().any(|&c| c != 1) {
            return false;
        }
    }
    true
}

/// The binomial tree `T_k`, the unique tree that is a k-atom, with
/// `2^(k-1)` vertices.
///
/// Layer `i >= 2` is the index range `[2^(i-2), 2^(i-1))`, and its vertex
/// `v + 2^(i-2)` is matched to `v`.
pub fn binomial_tree(k: usize) -> Result<Atom> {
    if k == 0 {
        return Err(Error::InvalidArgument("binomial tree needs k >= 1".into()));
    }
    if k > MAX_BINOMIAL_K {
        return Err(Error::too_large("binomial tree k", MAX_BINOMIAL_K, k));
    }
    let n = 1usize << (k - 1);
    let mut edges = Vec::with_capacity(n - 1);
    let mut layers = vec![vec![0]];
    for i in 2..=k {
        let half = 1usize << (i - 2);
        edges.extend((0..half).map(|v| (v, v + half)));
        layers.push((half..2 * half).collect());
    }
    edges.sort_unstable();
    Ok(Atom { graph: Graph::from_sorted_unique(n, edges), layers, seed: 0 })
}

/// Adds a new layer: old vertex `v` is joined to new vertex
/// `n + assignment[v]`. The new layer has `max(assignment) + 1` vertices,
/// each of which must be hit.
pub fn extend_atom(a: &Atom, assignment: &[usize]) -> Result<Atom> {
    let n = a.n();
    if assignment.len() != n {
        return Err(Error::InvalidAtom(format!("assignment covers {} of {n} vertices", assignment.len())));
    }
    let m = assignment.iter().max().map_or(0, |&x| x + 1);
    let mut hit = vec![false; m];
    for &t in assignment {
        hit[t] = true;
    }
    if hit.contains(&false) {
        return Err(Error::InvalidAtom("some new vertex has no old neighbor".into()));
    }
    Ok(extend_unchecked(a, assignment, m))
}

fn extend_unchecked(a: &Atom, assignment: &[usize], m: usize) -> Atom {
    let n = a.n();
    let mut edges = a.graph.edges().to_vec();
    edges.extend(assignment.iter().enumerate().map(|(v, &t)| (v, n + t)));
    edges.sort_unstable();
    let mut layers = a.layers.clone();
    layers.push((n..n + m).collect());
    Atom { graph: Graph::from_sorted_unique(n + m, edges), layers, seed: a.seed }
}

/// Every k-atom on at most `n_max` vertices, once per class under
/// layer-preserving relabeling.
///
/// Children of a canonical parent are its extensions by set partitions of
/// the parent's vertices (one block per new vertex). Two children are
/// equivalent exactly when a layer-preserving automorphism of the parent
/// maps one partition onto the other, so only the lexicographically least
/// restricted-growth string in each orbit is kept.
pub fn enumerate_atoms(k: usize, n_max: usize) -> Result<Vec<Atom>> {
    if k == 0 {
        return Err(Error::InvalidArgument("atoms need k >= 1".into()));
    }
    if k > MAX_ENUMERATION_K {
        return Err(Error::too_large("atom enumeration k", MAX_ENUMERATION_K, k));
    }
    if n_max > MAX_ENUMERATION_VERTICES {
        return Err(Error::too_large("atom enumeration vertices", MAX_ENUMERATION_VERTICES, n_max));
    }
    if n_max < k {
        return Ok(Vec::new());
    }
    let mut level = vec![binomial_tree(1)?];
    for i in 1..k {
        // the layers still to come need at least one vertex each
        let cap = n_max - (k - i - 1);
        let mut next = Vec::new();
        for parent in &level {
            let autos = layer_automorphisms(parent);
            for_each_rgs(parent.n(), cap - parent.n(), &mut |rgs, m| {
                if is_orbit_minimum(rgs, &autos) {
                    next.push(extend_unchecked(parent, rgs, m));
                }
            });
        }
        level = next;
    }
    Ok(level)
}

/// Restricted growth strings of length `len` with at most `max_blocks` blocks.
fn for_each_rgs(len: usize, max_blocks: usize, f: &mut impl FnMut(&[usize], usize)) {
    fn go(s: &mut Vec<usize>, len: usize, blocks: usize, max_blocks: usize, f: &mut impl FnMut(&[usize], usize)) {
        if s.len() == len {
            f(s, blocks);
            return;
        }
        for b in 0..=blocks.min(max_blocks - 1) {
            s.push(b);
            go(s, len, blocks.max(b + 1), max_blocks, f);
            s.pop();
        }
    }
    if max_blocks == 0 {
        return;
    }
    go(&mut Vec::with_capacity(len), len, 0, max_blocks, f);
}

/// All permutations fixing every layer setwise and preserving adjacency.
fn layer_automorphisms(a: &Atom) -> Vec<Vec<usize>> {
    let n = a.n();
    let adj = a.graph.neighbor_masks().expect("enumerated atoms are small");
    let mut layer_of = vec![0; n];
    for (i, layer) in a.layers.iter().enumerate() {
        for &v in layer {
            layer_of[v] = i;
        }
    }
    let mut out = Vec::new();
    let mut perm = vec![0usize; n];
    let mut used = 0u64;
    fn go(
        v: usize,
        a: &Atom,
        adj: &[u64],
        layer_of: &[usize],
        perm: &mut Vec<usize>,
        used: &mut u64,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == perm.len() {
            out.push(perm.clone());
            return;
        }
        for &img in &a.layers[layer_of[v]] {
            if *used >> img & 1 == 1 {
                continue;
            }
            let consistent = (0..v).all(|w| (adj[v] >> w & 1) == (adj[img] >> perm[w] & 1));
            if consistent {
                perm[v] = img;
                *used |= 1 << img;
                go(v + 1, a, adj, layer_of, perm, used, out);
                *used &= !(1 << img);
            }
        }
    }
    go(0, a, &adj, &layer_of, &mut perm, &mut used, &mut out);
    out
}

fn is_orbit_minimum(rgs: &[usize], autos: &[Vec<usize>]) -> bool {
    let mut image = vec![0usize; rgs.len()];
    let mut relabel = vec![usize::MAX; rgs.len()];
    for sigma in autos {
        for (v, &b) in rgs.iter().enumerate() {
            image[sigma[v]] = b;
        }
        relabel.iter_mut().for_each(|x| *x = usize::MAX);
        let mut next = 0;
        for x in image.iter_mut() {
            if relabel[*x] == usize::MAX {
                relabel[*x] = next;
                next += 1;
            }
            *x = relabel[*x];
        }
        if image.as_slice() < rgs {
            return false;
        }
    }
    true
}

/// Layer sizes `a_1, ..., a_k` of a possible atom construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LayerSizeSequence {
    sizes: Vec<usize>,
}

impl TryFrom<Vec<usize>> for LayerSizeSequence {
    type Error = Error;

    fn try_from(sizes: Vec<usize>) -> Result<Self> {
        LayerSizeSequence::new(sizes)
    }
}

impl From<LayerSizeSequence> for Vec<usize> {
    fn from(s: LayerSizeSequence) -> Self {
        s.sizes
    }
}

impl LayerSizeSequence {
    /// Requires `a_1 = 1` and `1 <= a_{i+1} <= a_1 + ... + a_i`.
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.first() != Some(&1) {
            return Err(Error::InvalidSequence(format!("{sizes:?} must start with 1")));
        }
        let mut prefix = 0;
        for &a in &sizes {
            if a == 0 || (prefix > 0 && a > prefix) {
                return Err(Error::InvalidSequence(format!("{sizes:?} violates 1 <= a_(i+1) <= a_1 + ... + a_i")));
            }
            prefix += a;
        }
        Ok(LayerSizeSequence { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] <= w[1])
    }

    /// `Σ_{i<j} √(a_i / a_j)`.
    pub fn ratio_sum(&self) -> f64 {
        let roots: Vec<f64> = self.sizes.iter().map(|&a| (a as f64).sqrt()).collect();
        let mut total = 0.0;
        for j in 1..roots.len() {
            let inv = 1.0 / roots[j];
            total += roots[..j].iter().sum::<f64>() * inv;
        }
        total
    }
}

/// Every valid layer-size sequence of length `k` summing to `n`, in
/// lexicographic order.
pub fn valid_sequences(n: usize, k: usize) -> Vec<LayerSizeSequence> {
    fn go(cur: &mut Vec<usize>, prefix: usize, n: usize, k: usize, out: &mut Vec<LayerSizeSequence>) {
        let left = k - cur.len();
        if left == 0 {
            if prefix == n {
                out.push(LayerSizeSequence { sizes: cur.clone() });
            }
            return;
        }
        let rest = n - prefix;
        // the largest total still reachable doubles the prefix each layer
        if rest < left || (left < usize::BITS as usize && rest > prefix.saturating_mul((1 << left) - 1)) {
            return;
        }
        for a in 1..=prefix.min(rest - (left - 1)) {
            cur.push(a);
            go(cur, prefix + a, n, k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    if k == 1 {
        if n == 1 {
            out.push(LayerSizeSequence { sizes: vec![1] });
        }
        return out;
    }
    go(&mut vec![1], 1, n, k, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientMinimum {
    pub value: f64,
    pub argmin: LayerSizeSequence,
}

/// Minimizes [`LayerSizeSequence::ratio_sum`] over `valid_sequences(n, k)`.
/// Ties go to the lexicographically smallest sequence.
pub fn min_quotient_sum(n: usize, k: usize) -> Option<QuotientMinimum> {
    let mut best: Option<QuotientMinimum> = None;
    for s in valid_sequences(n, k) {
        let value = s.ratio_sum();
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(QuotientMinimum { value, argmin: s });
        }
    }
    best
}

/// Every sequence whose ratio sum is within `tol` of the minimum.
pub fn near_minimizers(n: usize, k: usize, tol: f64) -> Vec<LayerSizeSequence> {
    let all: Vec<(f64, LayerSizeSequence)> = valid_sequences(n, k).into_iter().map(|s| (s.ratio_sum(), s)).collect();
    let min = all.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    all.into_iter().filter(|p| p.0 <= min + tol).map(|p| p.1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{first_fit, grundy_exact};

    #[test]
    fn small_binomial_trees() {
        let t1 = binomial_tree(1).unwrap();
        assert_eq!(t1.graph(), &Graph::empty(1));
        assert_eq!(binomial_tree(2).unwrap().graph(), &Graph::complete(2));
        let t3 = binomial_tree(3).unwrap();
        assert!(t3.graph().is_tree());
        let mut degrees: Vec<usize> = (0..4).map(|v| t3.graph().degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [1, 1, 2, 2]);
        assert!(binomial_tree(0).is_err());
        assert!(matches!(binomial_tree(25), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn binomial_trees_are_tree_atoms() {
        for k in 1..=12 {
            let t = binomial_tree(k).unwrap();
            assert_eq!(t.n(), 1 << (k - 1));
            assert!(t.graph().is_tree());
            assert!(is_atom(t.graph(), t.layers()));
        }
    }

    #[test]
    fn extensions() {
        let k1 = binomial_tree(1).unwrap();
        let k2 = extend_atom(&k1, &[0]).unwrap();
        assert_eq!(k2.graph(), &Graph::complete(2));
        let p4 = extend_atom(&k2, &[0, 1]).unwrap();
        assert_eq!(p4, binomial_tree(3).unwrap());
        let k3 = extend_atom(&k2, &[0, 0]).unwrap();
        assert_eq!(k3.graph(), &Graph::complete(3));
        assert_eq!(k3.layer_sizes().sizes(), &[1, 1, 1]);
        assert!(extend_atom(&k2, &[0, 2]).is_err());
        assert!(extend_atom(&k2, &[0]).is_err());
    }

    #[test]
    fn is_atom_examples() {
        assert!(is_atom(&Graph::complete(2), &[vec![0], vec![1]]));
        assert!(!is_atom(&Graph::complete(2), &[vec![0, 1]]));
        assert!(!is_atom(&Graph::complete(2), &[vec![0]]));
        let t4 = binomial_tree(4).unwrap();
        assert!(is_atom(t4.graph(), t4.layers()));
    }

    #[test]
    fn c4_has_no_three_layer_atom_partition() {
        // every ordered partition of {0,1,2,3} into three non-empty layers
        let c4 = Graph::cycle(4);
        for code in 0..3usize.pow(4) {
            let mut layers = vec![Vec::new(); 3];
            let mut rest = code;
            for v in 0..4 {
                layers[rest % 3].push(v);
                rest /= 3;
            }
            if layers.iter().all(|l| !l.is_empty()) {
                assert!(!is_atom(&c4, &layers), "{layers:?}");
            }
        }
    }

    #[test]
    fn enumeration_small_levels() {
        let a1 = enumerate_atoms(1, 12).unwrap();
        assert_eq!(a1.len(), 1);
        assert_eq!(a1[0].graph(), &Graph::empty(1));
        let a2 = enumerate_atoms(2, 12).unwrap();
        assert_eq!(a2.len(), 1);
        assert_eq!(a2[0].graph(), &Graph::complete(2));
        let a3 = enumerate_atoms(3, 4).unwrap();
        let shapes: Vec<Vec<usize>> = a3.iter().map(|a| a.layer_sizes().sizes().to_vec()).collect();
        assert_eq!(shapes, vec![vec![1, 1, 1], vec![1, 1, 2]]);
        assert_eq!(a3[0].graph(), &Graph::complete(3));
        assert!(a3[1].graph().is_tree());
        assert!(enumerate_atoms(6, 12).is_err());
        assert!(enumerate_atoms(3, 13).is_err());
    }

    /// Canonical form by brute force over all layer-preserving relabelings.
    fn brute_canonical(a: &Atom) -> Vec<(usize, usize)> {
        fn perms(items: &[usize]) -> Vec<Vec<usize>> {
            if items.is_empty() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 0..items.len() {
                let mut rest = items.to_vec();
                let x = rest.remove(i);
                for mut p in perms(&rest) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        let mut maps: Vec<Vec<usize>> = vec![vec![0; a.n()]];
        for layer in a.layers() {
            let mut next = Vec::new();
            for m in &maps {
                for p in perms(layer) {
                    let mut m = m.clone();
                    for (src, &dst) in layer.iter().zip(&p) {
                        m[*src] = dst;
                    }
                    next.push(m);
                }
            }
            maps = next;
        }
        maps.iter()
            .map(|m| {
                let mut e: Vec<(usize, usize)> =
                    a.graph().edges().iter().map(|&(u, v)| (m[u].min(m[v]), m[u].max(m[v]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap()
    }

    #[test]
    fn enumeration_is_complete_and_duplicate_free() {
        // oracle: extend every representative by every partition, then
        // dedupe by brute-force canonical form
        for k in 2..=4 {
            let n_max = 8;
            let got = enumerate_atoms(k, n_max).unwrap();
            let mut keys: Vec<_> = got.iter().map(|a| (a.layer_sizes(), brute_canonical(a))).collect();
            let before = keys.len();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), before, "duplicates at k={k}");

            let parents = enumerate_atoms(k - 1, n_max - 1).unwrap();
            let mut expected = Vec::new();
            for p in &parents {
                for_each_rgs(p.n(), n_max - p.n(), &mut |rgs, m| {
                    let c = extend_unchecked(p, rgs, m);
                    expected.push((c.layer_sizes(), brute_canonical(&c)));
                });
            }
            expected.sort();
            expected.dedup();
            assert_eq!(keys, expected, "k={k}");
        }
    }

    #[test]
    fn enumerated_atoms_are_valid_and_reach_level_k() {
        for k in 1..=4 {
            for a in enumerate_atoms(k, 8).unwrap() {
                assert!(is_atom(a.graph(), a.layers()));
                let c = first_fit(a.graph(), &a.grundy_ordering()).unwrap();
                assert_eq!(c.color(a.seed()), k);
                assert!(grundy_exact(a.graph()).value >= k);
            }
        }
    }

    #[test]
    fn binomial_tree_is_the_unique_largest_and_only_tree_atom() {
        for k in 1..=4 {
            let atoms = enumerate_atoms(k, 12).unwrap();
            let biggest = atoms.iter().map(Atom::n).max().unwrap();
            assert_eq!(biggest, 1 << (k - 1));
            let trees: Vec<&Atom> = atoms.iter().filter(|a| a.graph().is_tree()).collect();
            assert_eq!(trees.len(), 1);
            assert_eq!(trees[0].n(), biggest);
            assert_eq!(atoms.iter().filter(|a| a.n() == biggest).count(), 1);
        }
    }

    #[test]
    fn atom_json_round_trip() {
        let t = binomial_tree(3).unwrap();
        let text = t.to_json();
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[0,2],[1,3]],"layers":[[0],[1],[2,3]],"seed":0}"#);
        let back: Atom = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]],"layers":[[0],[1],[2,3]],"seed":0}"#;
        assert!(serde_json::from_str::<Atom>(bad).is_err());
    }

    #[test]
    fn sequences() {
        let seq = |v: &[usize]| LayerSizeSequence::new(v.to_vec()).unwrap();
        assert_eq!(valid_sequences(4, 3), vec![seq(&[1, 1, 2])]);
        assert_eq!(valid_sequences(5, 4), vec![seq(&[1, 1, 1, 2]), seq(&[1, 1, 2, 1])]);
        for k in 1..=6 {
            let tk: Vec<usize> = std::iter::once(1).chain((0..k - 1).map(|i| 1 << i)).collect();
            assert!(valid_sequences(1 << (k - 1), k).contains(&seq(&tk)));
        }
        assert!(valid_sequences(9, 4).is_empty());
        assert!(LayerSizeSequence::new(vec![1, 2]).is_err());
        assert!(LayerSizeSequence::new(vec![2]).is_err());
        assert!(LayerSizeSequence::new(vec![1, 0]).is_err());
    }

    #[test]
    fn valid_sequences_match_filtered_compositions() {
        fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return if n == 0 { vec![vec![]] } else { vec![] };
            }
            (1..=n)
                .flat_map(|a| {
                    compositions(n - a, k - 1).into_iter().map(move |mut c| {
                        c.insert(0, a);
                        c
                    })
                })
                .collect()
        }
        for n in 1..=12 {
            for k in 1..=n {
                let expected: Vec<Vec<usize>> =
                    compositions(n, k).into_iter().filter(|c| LayerSizeSequence::new(c.clone()).is_ok()).collect();
                let got: Vec<Vec<usize>> = valid_sequences(n, k).into_iter().map(Vec::from).collect();
                assert_eq!(got, expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn quotient_minimum_examples() {
        let m = min_quotient_sum(4, 3).unwrap();
        assert_eq!(m.argmin.sizes(), &[1, 1, 2]);
        assert!((m.value - (1.0 + 2.0 * 0.5f64.sqrt())).abs() < 1e-12);
        let m = min_quotient_sum(5, 4).unwrap();
        assert_eq!(m.argmin.sizes(), &[1, 1, 1, 2]);
        for k in 1..=8 {
            let m = min_quotient_sum(k, k).unwrap();
            assert_eq!(m.argmin.sizes(), vec![1; k].as_slice());
            assert!((m.value - (k * (k - 1) / 2) as f64).abs() < 1e-9);
        }
        assert!(min_quotient_sum(9, 4).is_none());
    }
}
