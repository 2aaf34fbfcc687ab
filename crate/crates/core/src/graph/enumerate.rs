//! Exhaustive labeled enumeration of small graphs and trees.

use crate::error::{Error, Result};

use super::Graph;

pub const MAX_ENUMERATION_VERTICES: usize = 7;
pub const MAX_TREE_ENUMERATION_VERTICES: usize = 10;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Streams every labeled connected simple graph on `n` vertices exactly once.
///
/// Edge subsets of `K_n` are visited in increasing bitmask order, where bit
/// `i` is the `i`-th pair in lexicographic order.
pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs> {
    if n == 0 {
        return Err(Error::InvalidArgument("enumeration needs n >= 1".into()));
    }
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::too_large("connected-graph enumeration vertices", MAX_ENUMERATION_VERTICES, n));
    }
    let pairs = pairs(n);
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs { n, pairs, next: 0, end })
}

pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl ConnectedGraphs {
    /// Number of edge subsets scanned in total (`2^(n choose 2)`).
    pub fn subset_count(&self) -> u64 {
        self.end
    }

    /// The graph for one edge subset, if connected. Lets sweeps split the
    /// subset range across workers.
    pub fn graph_at(&self, subset: u64) -> Option<Graph> {
        let mut masks = [0u64; MAX_ENUMERATION_VERTICES];
        let mut rest = subset;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            let (u, v) = self.pairs[i];
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
            rest &= rest - 1;
        }
        let masks = &masks[..self.n];
        if !mask_connected(masks) {
            return None;
        }
        Some(Graph::from_masks(masks))
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let s = self.next;
            self.next += 1;
            if let Some(g) = self.graph_at(s) {
                return Some(g);
            }
        }
        None
    }
}

fn mask_connected(masks: &[u64]) -> bool {
    let n = masks.len();
    if n == 0 {
        return true;
    }
    let all = (1u64 << n) - 1;
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            next |= masks[v];
            f &= f - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == all
}

/// Known counts of labeled connected graphs (OEIS A001187), for `n <= 7`.
pub fn connected_graph_count(n: usize) -> Option<u64> {
    const COUNTS: [u64; 8] = [1, 1, 1, 4, 38, 728, 26_704, 1_866_256];
    COUNTS.get(n).copied()
}

/// Every labeled tree on `n` vertices, decoded from its Prüfer sequence.
/// There are `n^(n-2)` of them.
pub fn enumerate_labeled_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n == 0 {
        return Err(Error::InvalidArgument("enumeration needs n >= 1".into()));
    }
    if n > MAX_TREE_ENUMERATION_VERTICES {
        return Err(Error::too_large("tree enumeration vertices", MAX_TREE_ENUMERATION_VERTICES, n));
    }
    let len = n.saturating_sub(2);
    let total = (n as u64).pow(len as u32);
    Ok((0..total).map(move |index| {
        let mut seq = vec![0usize; len];
        let mut rest = index;
        for slot in seq.iter_mut().rev() {
            *slot = (rest % n as u64) as usize;
            rest /= n as u64;
        }
        prufer_decode(n, &seq)
    }))
}

fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    if n == 1 {
        return Graph::empty(1);
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    edges.sort_unstable();
    Graph::from_sorted_unique(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_connected_count(n: usize) -> usize {
        // independent oracle: union-find over every edge subset
        let pairs = pairs(n);
        let mut count = 0;
        for s in 0u64..(1 << pairs.len()) {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if s >> i & 1 == 1 {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    parent[a] = b;
                }
            }
            let root = find(&mut parent, 0);
            if (0..n).all(|v| find(&mut parent, v) == root) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn small_counts_match_brute_force() {
        for n in 1..=5 {
            let got = enumerate_connected_graphs(n).unwrap().count();
            assert_eq!(got, brute_connected_count(n), "n={n}");
            assert_eq!(got as u64, connected_graph_count(n).unwrap());
        }
        assert_eq!(enumerate_connected_graphs(2).unwrap().collect::<Vec<_>>(), vec![Graph::complete(2)]);
        assert_eq!(enumerate_connected_graphs(3).unwrap().count(), 4);
        assert_eq!(enumerate_connected_graphs(4).unwrap().count(), 38);
    }

    #[test]
    fn every_enumerated_graph_is_connected_and_distinct() {
        let all: Vec<Graph> = enumerate_connected_graphs(5).unwrap().collect();
        assert!(all.iter().all(Graph::is_connected));
        let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn enumeration_refuses_large_n() {
        assert!(matches!(enumerate_connected_graphs(8), Err(Error::TooLarge { .. })));
        assert!(enumerate_connected_graphs(0).is_err());
    }

    #[test]
    fn prufer_enumerates_cayley_many_distinct_trees() {
        for n in 1..=6usize {
            let trees: Vec<Graph> = enumerate_labeled_trees(n).unwrap().collect();
            let expected = if n == 1 { 1 } else { n.pow(n as u32 - 2) };
            assert_eq!(trees.len(), expected);
            assert!(trees.iter().all(Graph::is_tree));
            let distinct: std::collections::HashSet<_> = trees.iter().cloned().collect();
            assert_eq!(distinct.len(), expected);
        }
    }
}
