//! Undirected simple graphs on the dense vertex set `0..n`.

mod enumerate;
mod random;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{
    connected_graph_count, enumerate_connected_graphs, enumerate_labeled_trees, ConnectedGraphs,
    MAX_ENUMERATION_VERTICES, MAX_TREE_ENUMERATION_VERTICES,
};
pub use random::{derive_seed, erdos_renyi, random_connected, seeded_rng, GraphRng};

/// An immutable undirected simple graph.
///
/// Both views are kept: sorted neighbor lists and the sorted edge list with
/// `u < v`. They are built together and always agree.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` must be sorted, deduplicated, loop-free, in range, with `u < v`.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Graph { n, adj, edges }
    }

    /// Builds from per-vertex neighbor bitmasks (`n <= 64`).
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        let mut edges = Vec::new();
        for (u, &m) in masks.iter().enumerate() {
            let mut rest = m & !((2u64 << u) - 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                edges.push((u, v));
                rest &= rest - 1;
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted_unique(n, edges)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_sorted_unique(n, edges)
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_sorted_unique(n, edges)
    }

    /// The star `K_{1,leaves}` with center `0`.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_sorted_unique(leaves + 1, edges)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::from_sorted_unique(a + b, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `(Δ, δ)`.
    pub fn degree_stats(&self) -> (usize, usize) {
        (self.max_degree(), self.min_degree())
    }

    /// Neighbor bitmasks, or `None` when `n > 64`.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|nb| nb.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect(),
        )
    }

    /// The graph with `v` deleted; vertices above `v` shift down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n);
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        Self::from_sorted_unique(self.n - 1, edges)
    }

    /// The spanning subgraph with edge `{u, v}` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let e = (u.min(v), u.max(v));
        let edges = self.edges.iter().copied().filter(|&x| x != e).collect();
        Self::from_sorted_unique(self.n, edges)
    }

    /// Connected components, each a sorted vertex list, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `n == 0` counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// 2-colorability via BFS.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_forest(&self) -> bool {
        self.num_edges() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.num_edges() + 1 == self.n && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        self.num_edges() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn classify(&self) -> GraphClassTag {
        let connected = self.is_connected();
        let forest = self.is_forest();
        GraphClassTag {
            is_connected: connected,
            is_tree: connected && forest && self.n >= 1,
            is_forest: forest,
            is_complete: self.is_complete(),
            is_bipartite: self.is_bipartite(),
        }
    }

    /// The degeneracy: the largest minimum degree met while repeatedly
    /// deleting a minimum-degree vertex.
    pub fn degeneracy(&self) -> usize {
        self.degeneracy_ordering().0
    }

    /// Degeneracy together with the peeling order. Among vertices of minimum
    /// current degree, the smallest index is removed first.
    pub fn degeneracy_ordering(&self) -> (usize, Vec<usize>) {
        let n = self.n;
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let max_deg = deg.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); max_deg + 1];
        for (v, &d) in deg.iter().enumerate() {
            buckets[d].insert(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        let mut low: usize = 0;
        for _ in 0..n {
            // a removal lowers neighbor degrees by at most one
            low = low.saturating_sub(1);
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop_first().expect("non-empty bucket");
            degeneracy = degeneracy.max(low);
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    buckets[deg[w]].remove(&w);
                    deg[w] -= 1;
                    buckets[deg[w]].insert(w);
                }
            }
        }
        (degeneracy, order)
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }

    /// Writes the edge-list text format accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Structural flags used by the equality cases of the spectral bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClassTag {
    pub is_connected: bool,
    pub is_tree: bool,
    pub is_forest: bool,
    pub is_complete: bool,
    pub is_bipartite: bool,
}

/// Parses the edge-list text format.
///
/// Each non-blank line is either a `u v` pair of 0-indexed vertices or the
/// header `n <count>`, which must precede every edge line. Without a header
/// the vertex count is one more than the largest index seen. Lines starting
/// with `#` are comments.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let parse_num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse { line: line_no, msg: format!("expected a non-negative integer, got {s:?}") })
        };
        match parts.as_slice() {
            ["n", count] => {
                if declared.is_some() || !edges.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "the `n <count>` header must appear once, before any edge".into(),
                    });
                }
                declared = Some(parse_num(count)?);
            }
            [u, v] => edges.push((parse_num(u)?, parse_num(v)?)),
            _ => {
                return Err(Error::Parse { line: line_no, msg: format!("expected `u v` or `n <count>`, got {line:?}") })
            }
        }
    }
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_edge_list("n 2\n0 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);

        let g = parse_edge_list("n 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.num_edges(), 0);

        let g = parse_edge_list("n 4\n0 1\n1 2\n2 3").unwrap();
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn parse_rejections() {
        assert!(matches!(parse_edge_list("n 3\n0 1\n1 0"), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(parse_edge_list("n 3\n2 2"), Err(Error::SelfLoop(2))));
        assert!(matches!(
            parse_edge_list("n 3\n0 3"),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(parse_edge_list("0 1\nn 4"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("0 x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_without_header_and_comments() {
        let g = parse_edge_list("# a triangle\n0 1\n1 2\n\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn degree_stats_examples() {
        assert_eq!(Graph::star(4).degree_stats(), (4, 1));
        assert_eq!(Graph::cycle(5).degree_stats(), (2, 2));
        assert_eq!(Graph::path(4).degree_stats(), (2, 1));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(Graph::path(7).degeneracy(), 1);
        assert_eq!(Graph::star(5).degeneracy(), 1);
        assert_eq!(Graph::complete(5).degeneracy(), 4);
        assert_eq!(Graph::cycle(6).degeneracy(), 2);
        assert_eq!(Graph::empty(3).degeneracy(), 0);
        // K4 plus a pendant path: the dense core decides.
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let (d, order) = g.degeneracy_ordering();
        assert_eq!(d, 3);
        assert_eq!(order[0], 5);
    }

    #[test]
    fn classify_examples() {
        let p4 = Graph::path(4).classify();
        assert!(p4.is_tree && p4.is_forest && p4.is_connected && p4.is_bipartite);
        let c4 = Graph::cycle(4).classify();
        assert!(c4.is_bipartite && !c4.is_tree && !c4.is_forest);
        let k3 = Graph::complete(3).classify();
        assert!(k3.is_complete && !k3.is_bipartite);
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().classify();
        assert!(two_k2.is_forest && !two_k2.is_tree && !two_k2.is_connected);
    }

    #[test]
    fn masks_round_trip() {
        let g = Graph::complete_bipartite(2, 3);
        let masks = g.neighbor_masks().unwrap();
        assert_eq!(Graph::from_masks(&masks), g);
    }

    #[test]
    fn vertex_and_edge_deletion() {
        let g = Graph::cycle(5);
        assert_eq!(g.without_vertex(0), Graph::path(4));
        assert_eq!(g.without_edge(4, 0), Graph::path(5));
    }

    #[test]
    fn serde_uses_edge_list_shape() {
        let g = Graph::path(3);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }
}
