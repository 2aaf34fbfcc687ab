//! Upper bounds on the Grundy number, and a per-graph report comparing them
//! with exact values.

use serde::Serialize;

use crate::coloring::{chromatic_number_with_budget, grundy_exact_with_budget, Exactness, DEFAULT_EXPANSION_BUDGET};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{mu_max_root, MAX_MATCHING_VERTICES};
use crate::spectral::{lambda_max_with, step_tk, SpectralMethod};
use crate::Execution;

/// Slack used when inverting the recurrence, so that `μ₁ = f_k` computed
/// with rounding still yields `k`.
pub const RECURRENCE_SLACK: f64 = 1e-9;

/// `Δ + 1`.
pub fn bound_maxdeg(delta: usize) -> usize {
    delta + 1
}

/// `1 + λ₁`. Bounds the chromatic number, not Γ.
pub fn bound_wilf(lambda1: f64) -> f64 {
    1.0 + lambda1
}

/// Largest `k` with `λ₁(T_k) <= μ₁`. A connected graph with `Γ >= k`
/// has `μ₁ >= λ₁(T_k)`, so this is an upper bound on Γ; it is also valid
/// with `λ₁` in place of `μ₁` since `λ₁ >= μ₁`.
pub fn bound_spectral_recurrence(mu1: f64) -> usize {
    let limit = mu1 + RECURRENCE_SLACK;
    let (mut k, mut f) = (1, 0.0);
    loop {
        let next = step_tk(f);
        if next > limit {
            return k;
        }
        f = next;
        k += 1;
    }
}

/// `(μ₁ + 1/2)² / 2 + 1`, the closed form that dominates the recurrence
/// bound because `√(2(k-1)) - λ₁(T_k) <= 1/2` for all `k`.
pub fn bound_spectral_remark(mu1: f64) -> f64 {
    (mu1 + 0.5).powi(2) / 2.0 + 1.0
}

/// `(4√n (λ₁ + 2))^(2/3)`: the largest `k` with `k√k / (4√n) - 2 <= λ₁`.
pub fn bound_size_corollary(lambda1: f64, n: usize) -> f64 {
    (4.0 * (n as f64).sqrt() * (lambda1 + 2.0)).powf(2.0 / 3.0)
}

/// `2|E| / λ₁`, or `n` for edgeless graphs (where `λ₁ = 0`).
pub fn bound_edges(num_edges: usize, lambda1: f64, n: usize) -> f64 {
    if num_edges == 0 || lambda1 <= 0.0 {
        n as f64
    } else {
        2.0 * num_edges as f64 / lambda1
    }
}

/// `d log₂ n + d + 1`. The constants are a heuristic choice; only the
/// `O(d log n)` shape is proven.
pub fn bound_degeneracy_log(d: usize, n: usize) -> f64 {
    let d = d as f64;
    d * (n.max(1) as f64).log2() + d + 1.0
}

/// `(1 + 5 ln ln n / ln n) · n / log₂ n`, the almost-sure bound for
/// `G(n, 1/2)`. Needs `n >= 16`.
pub fn bound_bollobas(n: usize) -> Result<f64> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("the G(n, 1/2) bound needs n >= 16, got {n}")));
    }
    let x = n as f64;
    Ok((1.0 + 5.0 * x.ln().ln() / x.ln()) * x / x.log2())
}

/// Limits for the exact Γ and χ searches in a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactBudget {
    /// Graphs with more vertices are not searched.
    pub max_vertices: usize,
    /// Node expansions per search.
    pub max_expansions: u64,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget { max_vertices: 24, max_expansions: DEFAULT_EXPANSION_BUDGET }
    }
}

/// A bound value: integer for the "largest k" forms, real otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    Int(u64),
    Real(f64),
}

impl BoundValue {
    pub fn as_f64(self) -> f64 {
        match self {
            BoundValue::Int(v) => v as f64,
            BoundValue::Real(v) => v,
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundValue::Int(v) => write!(f, "{v}"),
            BoundValue::Real(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub value: Option<BoundValue>,
    /// Whether the value is a proven upper bound on Γ for this graph.
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl BoundEntry {
    fn sound(value: BoundValue) -> Self {
        BoundEntry { value: Some(value), applicable: true, note: None }
    }

    fn noted(value: Option<BoundValue>, applicable: bool, note: &'static str) -> Self {
        BoundEntry { value, applicable, note: Some(note) }
    }
}

/// Every bound, in report order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub maxdeg_plus_one: BoundEntry,
    pub wilf: BoundEntry,
    pub spectral_recurrence: BoundEntry,
    pub spectral_remark: BoundEntry,
    pub size_corollary: BoundEntry,
    pub edges_wu_elphick: BoundEntry,
    pub degeneracy_log: BoundEntry,
    pub bollobas_half_density: BoundEntry,
}

pub const BOUND_NAMES: [&str; 8] = [
    "maxdeg_plus_one",
    "wilf",
    "spectral_recurrence",
    "spectral_remark",
    "size_corollary",
    "edges_wu_elphick",
    "degeneracy_log",
    "bollobas_half_density",
];

impl Bounds {
    pub fn entries(&self) -> [(&'static str, &BoundEntry); 8] {
        [
            (BOUND_NAMES[0], &self.maxdeg_plus_one),
            (BOUND_NAMES[1], &self.wilf),
            (BOUND_NAMES[2], &self.spectral_recurrence),
            (BOUND_NAMES[3], &self.spectral_remark),
            (BOUND_NAMES[4], &self.size_corollary),
            (BOUND_NAMES[5], &self.edges_wu_elphick),
            (BOUND_NAMES[6], &self.degeneracy_log),
            (BOUND_NAMES[7], &self.bollobas_half_density),
        ]
    }

    /// All eight bounds from the graph invariants. `mu1` may be `None`,
    /// in which case the spectral bounds use `λ₁`.
    pub fn evaluate(n: usize, num_edges: usize, max_degree: usize, degeneracy: usize, lambda1: f64, mu1: Option<f64>) -> Self {
        let spectral_input = mu1.unwrap_or(lambda1);
        let via = if mu1.is_some() { None } else { Some("evaluated at lambda1 >= mu1") };
        Bounds {
            maxdeg_plus_one: BoundEntry::sound(BoundValue::Int(bound_maxdeg(max_degree) as u64)),
            wilf: BoundEntry::noted(Some(BoundValue::Real(bound_wilf(lambda1))), false, "bounds the chromatic number"),
            spectral_recurrence: BoundEntry {
                value: Some(BoundValue::Int(bound_spectral_recurrence(spectral_input) as u64)),
                applicable: true,
                note: via,
            },
            spectral_remark: BoundEntry {
                value: Some(BoundValue::Real(bound_spectral_remark(spectral_input))),
                applicable: true,
                note: via,
            },
            size_corollary: BoundEntry::sound(BoundValue::Real(bound_size_corollary(lambda1, n))),
            edges_wu_elphick: if num_edges == 0 {
                BoundEntry::noted(Some(BoundValue::Real(n as f64)), true, "edgeless: reported as n")
            } else {
                BoundEntry::sound(BoundValue::Real(bound_edges(num_edges, lambda1, n)))
            },
            degeneracy_log: BoundEntry::noted(
                Some(BoundValue::Real(bound_degeneracy_log(degeneracy, n))),
                true,
                "HEURISTIC-CONSTANT",
            ),
            bollobas_half_density: BoundEntry::noted(
                bound_bollobas(n).ok().map(BoundValue::Real),
                false,
                "almost-sure bound for G(n, 1/2) only",
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub graph_id: String,
    pub n: usize,
    pub num_edges: usize,
    pub max_degree: usize,
    pub degeneracy: usize,
    pub connected: bool,
    pub lambda1: f64,
    pub lambda1_method: SpectralMethod,
    pub lambda1_residual: Option<f64>,
    pub mu1: Option<f64>,
    pub exact_grundy: Option<usize>,
    /// Best first-fit color count found; a lower bound on Γ.
    pub grundy_lower: usize,
    pub exact_chromatic: Option<usize>,
    pub bounds: Bounds,
    pub notes: Vec<String>,
}

pub const CSV_HEADER: [&str; 19] = [
    "graph_id",
    "n",
    "num_edges",
    "max_degree",
    "degeneracy",
    "connected",
    "lambda1",
    "mu1",
    "exact_grundy",
    "grundy_lower",
    "exact_chromatic",
    "maxdeg_plus_one",
    "wilf",
    "spectral_recurrence",
    "spectral_remark",
    "size_corollary",
    "edges_wu_elphick",
    "degeneracy_log",
    "bollobas_half_density",
];

pub fn bound_report(g: &Graph, graph_id: &str, budget: ExactBudget) -> BoundReport {
    bound_report_with(g, graph_id, budget, Execution::default())
}

pub fn bound_report_with(g: &Graph, graph_id: &str, budget: ExactBudget, exec: Execution) -> BoundReport {
    let n = g.n();
    let spectrum = lambda_max_with(g, exec);
    let mu1 = if n == 0 || n > MAX_MATCHING_VERTICES { None } else { mu_max_root(g).ok() };
    let mut notes = Vec::new();
    let (exact_grundy, grundy_lower, exact_chromatic) = if n <= budget.max_vertices {
        let gr = grundy_exact_with_budget(g, budget.max_expansions);
        let chi = chromatic_number_with_budget(g, budget.max_expansions);
        if gr.exactness != Exactness::Exact {
            notes.push("exact_grundy: search budget exhausted".to_string());
        }
        if chi.exactness != Exactness::Exact {
            notes.push("exact_chromatic: search budget exhausted".to_string());
        }
        (gr.exact(), gr.value, chi.exact())
    } else {
        notes.push(format!("exact fields skipped: n = {n} exceeds the exact-search limit {}", budget.max_vertices));
        let ordering: Vec<usize> = (0..n).collect();
        (None, crate::coloring::first_fit(g, &ordering).map_or(0, |c| c.num_colors()), None)
    };
    if mu1.is_none() {
        notes.push("mu1 not computed; spectral bounds use lambda1".to_string());
    }
    let connected = g.is_connected();
    if !connected {
        notes.push(
            "disconnected: Grundy number is the maximum over components; bounds use whole-graph lambda1 and mu1".to_string(),
        );
    }
    BoundReport {
        graph_id: graph_id.to_string(),
        n,
        num_edges: g.num_edges(),
        max_degree: g.max_degree(),
        degeneracy: g.degeneracy(),
        connected,
        lambda1: spectrum.lambda1,
        lambda1_method: spectrum.method,
        lambda1_residual: spectrum.residual,
        mu1,
        exact_grundy,
        grundy_lower,
        exact_chromatic,
        bounds: Bounds::evaluate(n, g.num_edges(), g.max_degree(), g.degeneracy(), spectrum.lambda1, mu1),
        notes,
    }
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// One CSV record matching [`CSV_HEADER`]; missing values are empty.
    pub fn csv_record(&self) -> Vec<String> {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        let mut row = vec![
            self.graph_id.clone(),
            self.n.to_string(),
            self.num_edges.to_string(),
            self.max_degree.to_string(),
            self.degeneracy.to_string(),
            self.connected.to_string(),
            self.lambda1.to_string(),
            opt(self.mu1),
            opt(self.exact_grundy),
            self.grundy_lower.to_string(),
            opt(self.exact_chromatic),
        ];
        row.extend(self.bounds.entries().iter().map(|(_, e)| opt(e.value)));
        row
    }

    /// Violated inequalities: Γ above a proven bound, χ above Wilf's
    /// bound, or the first-fit lower bound above a proven bound.
    pub fn violations(&self) -> Vec<String> {
        const SLACK: f64 = 1e-9;
        let mut out = Vec::new();
        let grundy = self.exact_grundy.unwrap_or(self.grundy_lower) as f64;
        for (name, e) in self.bounds.entries() {
            if let (true, Some(v)) = (e.applicable, e.value) {
                if grundy > v.as_f64() + SLACK {
                    out.push(format!("{name} = {v} is below the Grundy value {grundy}"));
                }
            }
        }
        if let (Some(chi), Some(w)) = (self.exact_chromatic, self.bounds.wilf.value) {
            if chi as f64 > w.as_f64() + 1e-8 {
                out.push(format!("chromatic number {chi} exceeds the Wilf bound {w}"));
            }
        }
        out
    }
}
