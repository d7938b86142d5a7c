//! Localized spectral Turán bounds and per-graph reports.
//!
//! Every bound is paired with the spectral quantity it controls. A record's
//! slack is `bound − measured`; for bounds on `λ₁²` the slack is taken on the
//! squares and the reported value is the square root of the right-hand side.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::clique::{
    balanced_clique_profile, clique_profile, frustration_index, BalancedCliqueProfile, CliqueProfile,
    MAX_FRUSTRATION_ORDER,
};
use crate::error::{Error, Result};
use crate::graph::{low_mask, multipartite_classes, Graph, SignedGraph, WeightedSignedGraph};
use crate::matrix::{build_matrix, MatrixKind};
use crate::spectra::{top_eigenpair, DEFAULT_EIGEN_TOL};

pub const EQUALITY_TOL: f64 = 1e-8;

/// Bound names as they appear in reports and on the command line.
pub mod names {
    pub const EDGE_LAMBDA: &str = "edge-lambda";
    pub const VERTEX_LAMBDA: &str = "vertex-lambda";
    pub const ABREU_NIKIFOROV: &str = "abreu-nikiforov";
    pub const VERTEX_Q: &str = "vertex-q";
    pub const A_ALPHA: &str = "a-alpha";
    pub const SANDWICH_LOWER: &str = "sandwich-lower";
    pub const SANDWICH_UPPER: &str = "sandwich-upper";
    pub const EDGE_Q_CONJECTURE: &str = "edge-q-conjecture";
    pub const SIGNED_ORDER: &str = "signed-order";
    pub const SIGNED_SIZE: &str = "signed-size";
    pub const SIGNED_FRUSTRATION: &str = "signed-frustration";
    pub const SIGNED_LOCAL_POSITIVE: &str = "signed-local-positive";
    pub const SIGNED_LOCAL_EDGE: &str = "signed-local-edge";
    pub const WEIGHTED_SIGNED_Q: &str = "weighted-signed-q";
    pub const SIGNED_EDGE_Q_ANALOGUE: &str = "signed-edge-q-analogue";

    /// Record name of the `A_α` bound at a given `α`.
    pub fn a_alpha(alpha: f64) -> String {
        format!("{A_ALPHA}({alpha})")
    }
}

pub const DEFAULT_ALPHAS: [f64; 5] = [0.0, 0.1, 0.25, 0.4, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Complete bipartite with unequal sides.
    CompleteBipartite,
    /// Complete multipartite with this many equal classes (includes `K_n`
    /// and balanced `K_{t,t}`).
    RegularCompleteMultipartite(usize),
    CompleteMultipartiteIrregular,
    Other,
}

impl Classification {
    pub fn is_complete_bipartite(self) -> bool {
        matches!(
            self,
            Classification::CompleteBipartite | Classification::RegularCompleteMultipartite(2)
        )
    }

    pub fn is_regular_complete_multipartite(self) -> bool {
        matches!(self, Classification::RegularCompleteMultipartite(_))
    }

    /// Graphs attaining `q ≤ 2Σ(1 − 1/c(v))` (and the global and edge forms):
    /// complete bipartite when ω = 2, regular complete ω-partite when ω ≥ 3.
    pub fn attains_q_bound(self) -> bool {
        self.is_complete_bipartite() || self.is_regular_complete_multipartite()
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::CompleteBipartite => write!(f, "complete-bipartite"),
            Classification::RegularCompleteMultipartite(k) => {
                write!(f, "regular-complete-multipartite({k})")
            }
            Classification::CompleteMultipartiteIrregular => write!(f, "complete-multipartite-irregular"),
            Classification::Other => write!(f, "other"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Complete multipartite structure detection: non-adjacency must be an
/// equivalence relation, i.e. the complement is a disjoint union of cliques.
pub fn classify_equality(g: &Graph) -> Classification {
    if g.order() < 2 {
        return Classification::Other;
    }
    let Some(classes) = multipartite_classes(g, low_mask(g.order())) else {
        return Classification::Other;
    };
    if classes.len() < 2 {
        return Classification::Other;
    }
    let first = classes[0].len();
    if classes.iter().all(|c| c.len() == first) {
        Classification::RegularCompleteMultipartite(classes.len())
    } else if classes.len() == 2 {
        Classification::CompleteBipartite
    } else {
        Classification::CompleteMultipartiteIrregular
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Domain("bounds are defined for connected graphs only".into()))
    }
}

fn local_term(c: usize) -> f64 {
    1.0 - 1.0 / c as f64
}

/// `2n(1 − 1/ω)`.
pub fn bound_abreu_nikiforov(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    Ok(abreu_nikiforov_value(g.order(), clique_profile(g).omega))
}

fn abreu_nikiforov_value(n: usize, omega: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    2.0 * n as f64 * local_term(omega)
}

/// `2Σ_v (1 − 1/c(v))`, bounding `q(G)`.
pub fn bound_vertex_localized_q(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    Ok(2.0 * vertex_sum(&clique_profile(g).per_vertex))
}

fn vertex_sum(per_vertex: &[usize]) -> f64 {
    if per_vertex.len() < 2 {
        return 0.0;
    }
    per_vertex.iter().map(|&c| local_term(c)).sum()
}

/// `Σ_v (1 − 1/c(v))`, bounding `λ₁(G)`.
pub fn bound_vertex_localized_lambda(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    Ok(vertex_sum(&clique_profile(g).per_vertex))
}

/// `√(Σ_e 2(1 − 1/c(e)))`, bounding `λ₁(G)`.
pub fn bound_edge_localized_lambda(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    Ok(edge_sum_sq(&clique_profile(g).per_edge).sqrt())
}

fn edge_sum_sq(per_edge: &[usize]) -> f64 {
    per_edge.iter().map(|&c| 2.0 * local_term(c)).sum()
}

/// `Σ_v (1 − 1/c(v))`, bounding `λ₁(A_α)` for `0 ≤ α ≤ 1/2`.
pub fn bound_a_alpha(g: &Graph, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    bound_vertex_localized_lambda(g)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=0.5).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha = {alpha} outside [0, 1/2]")))
    }
}

/// `2Σ_{uv ∈ E} (1 − 1/c(uv))(1/deg(u) + 1/deg(v))`. Reported against `q(G)`
/// but never asserted.
pub fn conjecture_rhs(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    if g.size() == 0 {
        return Err(Error::Domain("conjectured bound needs at least one edge".into()));
    }
    Ok(edge_degree_sum(g, &clique_profile(g).per_edge))
}

fn edge_degree_sum(g: &Graph, per_edge: &[usize]) -> f64 {
    let deg = g.degrees();
    g.edges()
        .iter()
        .zip(per_edge)
        .map(|(&(u, v), &c)| 2.0 * local_term(c) * (1.0 / deg[u] as f64 + 1.0 / deg[v] as f64))
        .sum()
}

/// `2Σ_v (1 − 1/c_b(v))·w(v)`, bounding `λ₁(Q(Γ))`.
pub fn bound_weighted_signed(ws: &WeightedSignedGraph) -> Result<f64> {
    require_connected(ws.signed().underlying())?;
    let p = balanced_clique_profile(ws.signed());
    Ok(weighted_vertex_sum(&p.per_vertex, ws.weights()))
}

fn weighted_vertex_sum(per_vertex: &[usize], weights: &[f64]) -> f64 {
    if per_vertex.len() < 2 {
        return 0.0;
    }
    2.0 * per_vertex
        .iter()
        .zip(weights)
        .map(|(&c, &w)| local_term(c) * w)
        .sum::<f64>()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BoundRecord {
    pub name: String,
    pub value: f64,
    pub measured: f64,
    pub slack: f64,
    pub equality: bool,
    /// Proven inequality; a negative slack beyond tolerance is a violation.
    pub asserted: bool,
}

impl BoundRecord {
    fn linear(name: impl Into<String>, value: f64, measured: f64, asserted: bool, tol: f64) -> Self {
        let slack = value - measured;
        BoundRecord {
            name: name.into(),
            value,
            measured,
            slack,
            equality: slack.abs() < tol,
            asserted,
        }
    }

    /// Bound on `measured²` by `rhs`; slack on the squares.
    fn squared(name: impl Into<String>, rhs: f64, measured: f64, asserted: bool, tol: f64) -> Self {
        let slack = rhs - measured * measured;
        BoundRecord {
            name: name.into(),
            value: rhs.sqrt(),
            measured,
            slack,
            equality: slack.abs() < tol,
            asserted,
        }
    }

    pub fn violated(&self, tol: f64) -> bool {
        self.asserted && self.slack < -tol
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frustration: Option<usize>,
    pub lambda1: f64,
    pub q: f64,
    /// Graphs on fewer than two vertices: every bound is 0 and no record
    /// counts as an equality.
    pub degenerate: bool,
    pub classification: Classification,
    pub bounds: Vec<BoundRecord>,
    /// Bounds not evaluated (size caps).
    pub skipped: Vec<String>,
    pub clique: CliqueProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced_clique: Option<BalancedCliqueProfile>,
}

impl BoundReport {
    pub fn record(&self, name: &str) -> Option<&BoundRecord> {
        self.bounds.iter().find(|b| b.name == name)
    }

    pub fn violations(&self, tol: f64) -> impl Iterator<Item = &BoundRecord> {
        self.bounds.iter().filter(move |b| b.violated(tol))
    }

    pub fn csv_rows(&self) -> Vec<CsvRow<'_>> {
        self.bounds
            .iter()
            .map(|b| CsvRow {
                graph: &self.graph,
                n: self.n,
                m: self.m,
                omega: self.omega,
                bound_name: &b.name,
                bound_value: b.value,
                measured: b.measured,
                slack: b.slack,
                equality: b.equality,
                classification: self.classification,
            })
            .collect()
    }
}

/// One CSV line: a graph × bound pair.
#[derive(Debug, Serialize)]
pub struct CsvRow<'a> {
    pub graph: &'a str,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub bound_name: &'a str,
    pub bound_value: f64,
    pub measured: f64,
    pub slack: f64,
    pub equality: bool,
    pub classification: Classification,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub alphas: Vec<f64>,
    pub eigen_tol: f64,
    pub equality_tol: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            alphas: DEFAULT_ALPHAS.to_vec(),
            eigen_tol: DEFAULT_EIGEN_TOL,
            equality_tol: EQUALITY_TOL,
        }
    }
}

fn degenerate_flags(mut records: Vec<BoundRecord>, degenerate: bool) -> Vec<BoundRecord> {
    if degenerate {
        records.iter_mut().for_each(|r| r.equality = false);
    }
    records
}

/// Every unsigned bound for a connected graph.
pub fn full_report(g: &Graph, id: &str, opts: &ReportOptions) -> Result<BoundReport> {
    require_connected(g)?;
    for &a in &opts.alphas {
        check_alpha(a)?;
    }
    let tol = opts.equality_tol;
    let n = g.order();
    let profile = clique_profile(g);
    let degenerate = n < 2;

    let lambda1 = top_eigenpair(&build_matrix(g, MatrixKind::Adjacency)?, opts.eigen_tol)?.lambda_max;
    let q = top_eigenpair(&build_matrix(g, MatrixKind::SignlessLaplacian)?, opts.eigen_tol)?.lambda_max;

    let vertex = vertex_sum(&profile.per_vertex);
    let mut bounds = vec![
        BoundRecord::squared(names::EDGE_LAMBDA, edge_sum_sq(&profile.per_edge), lambda1, true, tol),
        BoundRecord::linear(names::VERTEX_LAMBDA, vertex, lambda1, true, tol),
        BoundRecord::linear(names::ABREU_NIKIFOROV, abreu_nikiforov_value(n, profile.omega), q, true, tol),
        BoundRecord::linear(names::VERTEX_Q, 2.0 * vertex, q, true, tol),
    ];
    for &alpha in &opts.alphas {
        let la = top_eigenpair(&build_matrix(g, MatrixKind::AAlpha(alpha))?, opts.eigen_tol)?.lambda_max;
        bounds.push(BoundRecord::linear(names::a_alpha(alpha), vertex, la, true, tol));
    }
    bounds.push(BoundRecord::linear(names::SANDWICH_LOWER, q, 2.0 * lambda1, true, tol));
    bounds.push(BoundRecord::linear(
        names::SANDWICH_UPPER,
        2.0 * g.max_degree() as f64,
        q,
        true,
        tol,
    ));
    let conj = if g.size() == 0 { 0.0 } else { edge_degree_sum(g, &profile.per_edge) };
    bounds.push(BoundRecord::linear(names::EDGE_Q_CONJECTURE, conj, q, false, tol));

    Ok(BoundReport {
        graph: id.to_string(),
        n,
        m: g.size(),
        omega: profile.omega,
        omega_b: None,
        frustration: None,
        lambda1,
        q,
        degenerate,
        classification: classify_equality(g),
        bounds: degenerate_flags(bounds, degenerate),
        skipped: Vec::new(),
        clique: profile,
        balanced_clique: None,
    })
}

/// Γ′ switched by the entrywise signs of a top eigenvector of `A(Γ)` (zero
/// entries count as positive), so that `A(Γ′)` has a nonnegative top
/// eigenvector.
pub fn perron_switching(s: &SignedGraph, eigen_tol: f64) -> Result<SignedGraph> {
    let top = top_eigenpair(&build_matrix(s, MatrixKind::SignedAdjacency)?, eigen_tol)?;
    let negative: Vec<usize> = top
        .eigenvector
        .iter()
        .enumerate()
        .filter(|(_, &x)| x < 0.0)
        .map(|(v, _)| v)
        .collect();
    s.switch(&negative)
}

/// Signed and vertex-weighted bounds for a weighted signed graph with a
/// connected underlying graph.
pub fn signed_report(ws: &WeightedSignedGraph, id: &str, opts: &ReportOptions) -> Result<BoundReport> {
    let s = ws.signed();
    let g = s.underlying();
    require_connected(g)?;
    let tol = opts.equality_tol;
    let n = g.order();
    let m = g.size();
    let degenerate = n < 2;
    let profile = clique_profile(g);
    let bprofile = balanced_clique_profile(s);
    let omega_b = bprofile.omega_b;

    let lambda1 = top_eigenpair(&build_matrix(s, MatrixKind::SignedAdjacency)?, opts.eigen_tol)?.lambda_max;
    let q = top_eigenpair(&build_matrix(ws, MatrixKind::SignedSignlessLaplacian)?, opts.eigen_tol)?.lambda_max;
    let global = if n < 2 { 0.0 } else { local_term(omega_b) };

    let mut bounds = vec![
        BoundRecord::linear(names::SIGNED_ORDER, n as f64 * global, lambda1, true, tol),
        BoundRecord::squared(names::SIGNED_SIZE, 2.0 * m as f64 * global, lambda1, true, tol),
    ];
    let mut skipped = Vec::new();
    let frustration = if n <= MAX_FRUSTRATION_ORDER {
        let eps = frustration_index(s)?;
        bounds.push(BoundRecord::squared(
            names::SIGNED_FRUSTRATION,
            2.0 * (m - eps) as f64 * global,
            lambda1,
            true,
            tol,
        ));
        Some(eps)
    } else {
        skipped.push(names::SIGNED_FRUSTRATION.to_string());
        None
    };

    // c_b is switching invariant, so the per-edge values of Γ serve Γ′ too.
    let switched = perron_switching(s, opts.eigen_tol)?;
    let positive_sum: f64 = g
        .edges()
        .iter()
        .zip(switched.signs())
        .zip(&bprofile.per_edge)
        .filter(|((_, &sign), _)| sign == crate::graph::Sign::Positive)
        .map(|(_, &c)| 2.0 * local_term(c))
        .sum();
    bounds.push(BoundRecord::squared(names::SIGNED_LOCAL_POSITIVE, positive_sum, lambda1, true, tol));
    bounds.push(BoundRecord::squared(
        names::SIGNED_LOCAL_EDGE,
        edge_sum_sq(&bprofile.per_edge),
        lambda1,
        true,
        tol,
    ));
    bounds.push(BoundRecord::linear(
        names::WEIGHTED_SIGNED_Q,
        weighted_vertex_sum(&bprofile.per_vertex, ws.weights()),
        q,
        true,
        tol,
    ));
    if m > 0 {
        bounds.push(BoundRecord::linear(
            names::SIGNED_EDGE_Q_ANALOGUE,
            edge_degree_sum(g, &bprofile.per_edge),
            q,
            false,
            tol,
        ));
    }

    Ok(BoundReport {
        graph: id.to_string(),
        n,
        m,
        omega: profile.omega,
        omega_b: Some(omega_b),
        frustration,
        lambda1,
        q,
        degenerate,
        classification: classify_equality(g),
        bounds: degenerate_flags(bounds, degenerate),
        skipped,
        clique: profile,
        balanced_clique: Some(bprofile),
    })
}
