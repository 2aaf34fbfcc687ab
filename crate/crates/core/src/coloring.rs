//! First-fit coloring with exact Grundy and chromatic numbers.
//!
//! Colors are `1..=k`. [`grundy_bruteforce`] is the definition run literally
//! (every ordering); [`grundy_exact`] searches partial Grundy colorings
//! instead and is the one to use beyond a handful of vertices.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_BRUTEFORCE_VERTICES: usize = 9;
pub const MAX_EXACT_VERTICES: usize = 64;
pub const DEFAULT_EXPANSION_BUDGET: u64 = 100_000_000;

/// A proper coloring with colors `1..=num_colors`, all of them used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    /// Colors used are exactly `{1..=num_colors}`.
    pub fn is_surjective(&self) -> bool {
        let mut used = vec![false; self.num_colors + 1];
        for &c in &self.colors {
            if c == 0 || c > self.num_colors {
                return false;
            }
            used[c] = true;
        }
        used[1..].iter().all(|&u| u)
    }
}

/// Colors vertices in `ordering`, each with the smallest color absent from
/// its already-colored neighbors.
pub fn first_fit(g: &Graph, ordering: &[usize]) -> Result<Coloring> {
    let n = g.n();
    if ordering.len() != n {
        return Err(Error::NotPermutation);
    }
    let mut seen = vec![false; n];
    for &v in ordering {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotPermutation);
        }
    }
    Ok(first_fit_unchecked(g, ordering))
}

pub(crate) fn first_fit_unchecked(g: &Graph, ordering: &[usize]) -> Coloring {
    let n = g.n();
    let mut colors = vec![0usize; n];
    // stamp[c] == v + 1 marks color c as taken around v
    let mut stamp = vec![0usize; g.max_degree() + 2];
    let mut num_colors = 0;
    for &v in ordering {
        for &w in g.neighbors(v) {
            let c = colors[w];
            if c != 0 && c < stamp.len() {
                stamp[c] = v + 1;
            }
        }
        let c = (1..stamp.len()).find(|&c| stamp[c] != v + 1).expect("degree + 1 colors suffice");
        colors[v] = c;
        num_colors = num_colors.max(c);
    }
    Coloring { colors, num_colors }
}

/// An ordering together with the first-fit coloring it produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrundyWitness {
    pub ordering: Vec<usize>,
    pub coloring: Coloring,
}

impl GrundyWitness {
    pub fn from_ordering(g: &Graph, ordering: Vec<usize>) -> Result<Self> {
        let coloring = first_fit(g, &ordering)?;
        Ok(GrundyWitness { ordering, coloring })
    }

    /// Replays the ordering and checks the stored coloring, plus the Grundy
    /// property: a vertex of color `c` sees every color below `c` among its
    /// earlier neighbors.
    pub fn verify(&self, g: &Graph) -> bool {
        let Ok(replayed) = first_fit(g, &self.ordering) else { return false };
        if replayed != self.coloring {
            return false;
        }
        let mut position = vec![0; g.n()];
        for (i, &v) in self.ordering.iter().enumerate() {
            position[v] = i;
        }
        (0..g.n()).all(|v| {
            let c = self.coloring.color(v);
            (1..c).all(|want| {
                g.neighbors(v)
                    .iter()
                    .any(|&w| position[w] < position[v] && self.coloring.color(w) == want)
            })
        })
    }
}

/// Whether a search result is proven.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    /// The search budget ran out; the value is only a lower bound.
    LowerBound,
    /// The search budget ran out; the value is only an upper bound.
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrundyOutcome {
    pub value: usize,
    pub exactness: Exactness,
    pub witness: GrundyWitness,
}

impl GrundyOutcome {
    pub fn exact(&self) -> Option<usize> {
        (self.exactness == Exactness::Exact).then_some(self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticOutcome {
    pub value: usize,
    pub exactness: Exactness,
    pub coloring: Coloring,
}

impl ChromaticOutcome {
    pub fn exact(&self) -> Option<usize> {
        (self.exactness == Exactness::Exact).then_some(self.value)
    }
}

/// Γ(G) as the maximum first-fit color count over all `n!` orderings.
///
/// Orderings are explored depth first; two prefixes that leave the same
/// partial coloring have the same completions, so each partial coloring is
/// expanded once. The search stops early only when `Δ + 1` is reached.
pub fn grundy_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > MAX_BRUTEFORCE_VERTICES {
        return Err(Error::too_large("brute-force Grundy vertices", MAX_BRUTEFORCE_VERTICES, n));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = g.neighbor_masks().expect("n <= 9");
    let mut bf = BruteForce {
        adj,
        n,
        ceiling: g.max_degree() + 1,
        colors: [0; MAX_BRUTEFORCE_VERTICES],
        classes: [0; MAX_BRUTEFORCE_VERTICES + 1],
        seen: FxHashSet::default(),
        best: 0,
    };
    bf.dfs(0, 0);
    Ok(bf.best)
}

struct BruteForce {
    adj: Vec<u64>,
    n: usize,
    ceiling: usize,
    colors: [u8; MAX_BRUTEFORCE_VERTICES],
    classes: [u64; MAX_BRUTEFORCE_VERTICES + 1],
    seen: FxHashSet<u64>,
    best: usize,
}

impl BruteForce {
    fn key(&self) -> u64 {
        self.colors[..self.n].iter().fold(0u64, |k, &c| k << 4 | c as u64)
    }

    fn dfs(&mut self, placed: u64, max_color: usize) {
        if self.best >= self.ceiling {
            return;
        }
        let remaining = self.n - placed.count_ones() as usize;
        if remaining == 0 {
            self.best = self.best.max(max_color);
            return;
        }
        if max_color + remaining <= self.best || !self.seen.insert(self.key()) {
            return;
        }
        for v in 0..self.n {
            if placed >> v & 1 == 1 {
                continue;
            }
            let c = (1..).find(|&c| self.classes[c] & self.adj[v] == 0).expect("a free color exists");
            self.colors[v] = c as u8;
            self.classes[c] |= 1 << v;
            self.dfs(placed | 1 << v, max_color.max(c));
            self.classes[c] &= !(1 << v);
            self.colors[v] = 0;
        }
    }
}

/// Exact Γ(G) with the default expansion budget.
pub fn grundy_exact(g: &Graph) -> GrundyOutcome {
    grundy_exact_with_budget(g, DEFAULT_EXPANSION_BUDGET)
}

/// Exact Γ(G) by searching partial Grundy colorings.
///
/// Γ(G) >= k iff some vertex subset carries a proper coloring with colors
/// `1..=k` in which every vertex of color `c` has neighbors of all colors
/// below `c` inside the subset: listing that subset class by class and the
/// rest afterwards makes first-fit use at least `k` colors. The search seeds
/// one vertex with color `k` and repeatedly resolves the most constrained
/// unmet requirement "v needs a neighbor of color j" by branching over the
/// neighbors that could take color `j`. `k` increases from a greedy lower
/// bound until it fails or reaches `Δ + 1`.
///
/// If more than `budget` search nodes are expanded, the best value found so
/// far is returned as a [`Exactness::LowerBound`].
pub fn grundy_exact_with_budget(g: &Graph, budget: u64) -> GrundyOutcome {
    let n = g.n();
    let natural: Vec<usize> = (0..n).collect();
    let mut by_degree = natural.clone();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut witness = [natural, by_degree]
        .into_iter()
        .map(|o| GrundyWitness { coloring: first_fit_unchecked(g, &o), ordering: o })
        .max_by_key(|w| w.coloring.num_colors())
        .expect("two candidates");
    let ceiling = if n == 0 { 0 } else { g.max_degree() + 1 };
    let Some(adj) = g.neighbor_masks() else {
        return GrundyOutcome { value: witness.coloring.num_colors(), exactness: Exactness::LowerBound, witness };
    };
    let mut search = PartialGrundy::new(g, adj, budget);
    let mut best = witness.coloring.num_colors();
    let mut k = best + 1;
    while k <= ceiling {
        match search.feasible(k) {
            Some(true) => {
                let ordering = search.witness_ordering();
                let coloring = first_fit_unchecked(g, &ordering);
                best = coloring.num_colors();
                debug_assert!(best >= k);
                witness = GrundyWitness { ordering, coloring };
                k = best + 1;
            }
            Some(false) => break,
            None => {
                return GrundyOutcome { value: best, exactness: Exactness::LowerBound, witness };
            }
        }
    }
    GrundyOutcome { value: best, exactness: Exactness::Exact, witness }
}

struct PartialGrundy {
    n: usize,
    adj: Vec<u64>,
    degree: Vec<usize>,
    color: Vec<usize>,
    classes: Vec<u64>,
    colored: u64,
    budget: u64,
    expansions: u64,
    exhausted: bool,
}

impl PartialGrundy {
    fn new(g: &Graph, adj: Vec<u64>, budget: u64) -> Self {
        let n = g.n();
        PartialGrundy {
            n,
            adj,
            degree: (0..n).map(|v| g.degree(v)).collect(),
            color: vec![0; n],
            classes: vec![0; n + 2],
            colored: 0,
            budget,
            expansions: 0,
            exhausted: false,
        }
    }

    /// `None` when the budget ran out.
    fn feasible(&mut self, k: usize) -> Option<bool> {
        self.color.iter_mut().for_each(|c| *c = 0);
        self.classes.iter_mut().for_each(|m| *m = 0);
        self.colored = 0;
        for root in 0..self.n {
            if self.degree[root] + 1 < k {
                continue;
            }
            self.assign(root, k);
            if self.solve() {
                return Some(true);
            }
            self.unassign(root);
            if self.exhausted {
                return None;
            }
        }
        Some(false)
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.classes[c] |= 1 << v;
        self.colored |= 1 << v;
    }

    fn unassign(&mut self, v: usize) {
        let c = std::mem::replace(&mut self.color[v], 0);
        self.classes[c] &= !(1 << v);
        self.colored &= !(1 << v);
    }

    /// Uncolored vertices that may take color `c` right now.
    fn eligible(&self, c: usize) -> u64 {
        let mut m = !self.colored & low_bits(self.n);
        let mut out = 0;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.degree[u] + 1 >= c && self.classes[c] & self.adj[u] == 0 {
                out |= 1 << u;
            }
        }
        out
    }

    fn solve(&mut self) -> bool {
        self.expansions += 1;
        if self.expansions > self.budget {
            self.exhausted = true;
            return false;
        }
        // most constrained unmet requirement (vertex, color, candidates)
        let mut pick: Option<(usize, usize, u64)> = None;
        let mut eligible_cache: Vec<Option<u64>> = vec![None; self.classes.len()];
        let mut m = self.colored;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let free = (self.adj[v] & !self.colored).count_ones();
            let mut missing = 0;
            for c in 1..self.color[v] {
                if self.classes[c] & self.adj[v] != 0 {
                    continue;
                }
                missing += 1;
                let elig = *eligible_cache[c].get_or_insert_with(|| self.eligible(c));
                let cand = self.adj[v] & elig;
                if cand == 0 {
                    return false;
                }
                if pick.is_none_or(|(_, _, best)| cand.count_ones() < best.count_ones()) {
                    pick = Some((v, c, cand));
                }
            }
            if missing > free {
                return false;
            }
        }
        let Some((_, c, mut cand)) = pick else { return true };
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.assign(u, c);
            if self.solve() {
                return true;
            }
            self.unassign(u);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Colored vertices class by class, then the rest, each by index.
    fn witness_ordering(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).filter(|&v| self.color[v] > 0).collect();
        order.sort_by_key(|&v| (self.color[v], v));
        order.extend((0..self.n).filter(|&v| self.color[v] == 0));
        order
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Exact χ(G) with the default expansion budget.
pub fn chromatic_number(g: &Graph) -> ChromaticOutcome {
    chromatic_number_with_budget(g, DEFAULT_EXPANSION_BUDGET)
}

/// χ(G) by iterative deepening over `k`, each step a DSATUR-ordered
/// backtracking search for a proper `k`-coloring. On budget exhaustion the
/// best coloring found is returned as an [`Exactness::UpperBound`].
pub fn chromatic_number_with_budget(g: &Graph, budget: u64) -> ChromaticOutcome {
    let n = g.n();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let greedy = first_fit_unchecked(g, &by_degree);
    let Some(adj) = g.neighbor_masks() else {
        return ChromaticOutcome { value: greedy.num_colors(), exactness: Exactness::UpperBound, coloring: greedy };
    };
    let lower = match (n, g.num_edges()) {
        (0, _) => 0,
        (_, 0) => 1,
        _ => 2,
    };
    let mut search = Dsatur { adj, n, color: vec![0; n], budget, expansions: 0, exhausted: false };
    for k in lower..greedy.num_colors() {
        if search.colorable(k) {
            let colors = search.color.iter().map(|&c| c as usize).collect();
            let coloring = Coloring { colors, num_colors: k };
            return ChromaticOutcome { value: k, exactness: Exactness::Exact, coloring };
        }
        if search.exhausted {
            return ChromaticOutcome { value: greedy.num_colors(), exactness: Exactness::UpperBound, coloring: greedy };
        }
    }
    ChromaticOutcome { value: greedy.num_colors(), exactness: Exactness::Exact, coloring: greedy }
}

struct Dsatur {
    adj: Vec<u64>,
    n: usize,
    color: Vec<u8>,
    budget: u64,
    expansions: u64,
    exhausted: bool,
}

impl Dsatur {
    fn colorable(&mut self, k: usize) -> bool {
        self.color.iter_mut().for_each(|c| *c = 0);
        let mut classes = vec![0u64; k + 1];
        self.extend(k, &mut classes, 0)
    }

    fn extend(&mut self, k: usize, classes: &mut [u64], used: usize) -> bool {
        self.expansions += 1;
        if self.expansions > self.budget {
            self.exhausted = true;
            return false;
        }
        // uncolored vertex with the most distinct neighbor colors, then degree, then index
        let mut pick = None;
        let mut best_key = (0usize, 0usize);
        for v in 0..self.n {
            if self.color[v] != 0 {
                continue;
            }
            let sat = (1..=used).filter(|&c| classes[c] & self.adj[v] != 0).count();
            let key = (sat, self.adj[v].count_ones() as usize);
            if pick.is_none() || key > best_key {
                pick = Some(v);
                best_key = key;
            }
        }
        let Some(v) = pick else { return true };
        // a fresh color is only tried once (color symmetry)
        for c in 1..=k.min(used + 1) {
            if classes[c] & self.adj[v] != 0 {
                continue;
            }
            self.color[v] = c as u8;
            classes[c] |= 1 << v;
            if self.extend(k, classes, used.max(c)) {
                return true;
            }
            classes[c] &= !(1 << v);
            self.color[v] = 0;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}
