//! Simple undirected graphs, signed graphs and vertex-weighted signed graphs.
//!
//! Adjacency is stored as one `u64` neighbour mask per vertex, so graphs are
//! limited to [`MAX_VERTICES`] vertices. Vertices are 0-indexed and the edge
//! list is kept in lexicographic order of `(u, v)` with `u < v`.

use std::collections::VecDeque;

use rand::Rng;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Bitmask of vertices.
pub type VertexMask = u64;

#[inline]
pub(crate) fn bit(v: usize) -> VertexMask {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> VertexMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_vertices(mut mask: VertexMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexMask>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
            edges: Vec::new(),
        })
    }

    /// Builds a graph from an edge list. Edges may be given in either
    /// orientation; loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Argument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Argument(format!("self-loop at vertex {u}")));
            }
            if adj[u] & bit(v) != 0 {
                return Err(Error::Argument(format!("repeated edge ({u}, {v})")));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Self::from_masks_unchecked(adj))
    }

    /// Builds a graph from symmetric, irreflexive neighbour masks.
    pub fn from_adjacency_masks(adj: Vec<VertexMask>) -> Result<Self> {
        let n = adj.len();
        check_order(n)?;
        let full = low_mask(n);
        for (u, &m) in adj.iter().enumerate() {
            if m & !full != 0 {
                return Err(Error::Argument(format!(
                    "vertex {u} has neighbours outside 0..{n}"
                )));
            }
            if m & bit(u) != 0 {
                return Err(Error::Argument(format!("self-loop at vertex {u}")));
            }
            for v in mask_vertices(m) {
                if adj[v] & bit(u) == 0 {
                    return Err(Error::Argument(format!(
                        "adjacency not symmetric at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(Self::from_masks_unchecked(adj))
    }

    pub(crate) fn from_masks_unchecked(adj: Vec<VertexMask>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in mask_vertices(adj[u] & !low_mask(u + 1)) {
                edges.push((u, v));
            }
        }
        Graph { n, adj, edges }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    pub fn adjacency_masks(&self) -> &[VertexMask] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    /// True iff a BFS from vertex 0 reaches every vertex. The 0-vertex graph
    /// is connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let full = low_mask(self.n);
        let mut seen = bit(0);
        let mut frontier = bit(0);
        while frontier != 0 {
            let mut next = 0;
            for v in mask_vertices(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    /// Whether `mask` induces a complete subgraph.
    pub fn is_clique(&self, mask: VertexMask) -> bool {
        mask_vertices(mask).all(|v| (mask & !bit(v)) & !self.adj[v] == 0)
    }

    /// Graph obtained by relabelling vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Argument("permutation length mismatch".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::Argument("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[perm[u]] |= bit(perm[v]);
            adj[perm[v]] |= bit(perm[u]);
        }
        Ok(Self::from_masks_unchecked(adj))
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::UnsupportedSize(format!(
            "{n} vertices exceeds the limit of {MAX_VERTICES}"
        )))
    } else {
        Ok(())
    }
}

/// Edge sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// A graph with a sign on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    underlying: Graph,
    signs: Vec<Sign>,
    negative: Vec<VertexMask>,
}

impl SignedGraph {
    /// `signs[i]` is the sign of `g.edges()[i]`.
    pub fn new(g: Graph, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != g.size() {
            return Err(Error::Argument(format!(
                "{} signs given for {} edges",
                signs.len(),
                g.size()
            )));
        }
        let mut negative = vec![0u64; g.order()];
        for (&(u, v), &s) in g.edges().iter().zip(&signs) {
            if s == Sign::Negative {
                negative[u] |= bit(v);
                negative[v] |= bit(u);
            }
        }
        Ok(SignedGraph {
            underlying: g,
            signs,
            negative,
        })
    }

    pub fn all_positive(g: Graph) -> Self {
        let m = g.size();
        Self::new(g, vec![Sign::Positive; m]).expect("sign count matches")
    }

    /// Every edge negated.
    pub fn negated(&self) -> Self {
        let signs = self.signs.iter().map(|s| s.flip()).collect();
        Self::new(self.underlying.clone(), signs).expect("sign count matches")
    }

    pub fn underlying(&self) -> &Graph {
        &self.underlying
    }

    pub fn order(&self) -> usize {
        self.underlying.order()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Sign of edge `{u, v}`, or `None` if it is not an edge.
    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        if !self.underlying.has_edge(u, v) {
            return None;
        }
        Some(if self.negative[u] & bit(v) != 0 {
            Sign::Negative
        } else {
            Sign::Positive
        })
    }

    /// Negative neighbours of `v`.
    pub fn negative_neighbors(&self, v: usize) -> VertexMask {
        self.negative[v]
    }

    pub fn negative_edge_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Negative).count()
    }

    /// Edges carrying a positive sign.
    pub fn positive_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.underlying
            .edges()
            .iter()
            .zip(&self.signs)
            .filter(|(_, &s)| s == Sign::Positive)
            .map(|(&e, _)| e)
    }

    /// Negates every edge with exactly one endpoint in `subset`.
    pub fn switch(&self, subset: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in subset {
            if v >= self.order() {
                return Err(Error::Argument(format!(
                    "switching vertex {v} out of range for {} vertices",
                    self.order()
                )));
            }
            mask |= bit(v);
        }
        Ok(self.switch_mask(mask))
    }

    pub(crate) fn switch_mask(&self, mask: VertexMask) -> Self {
        let signs = self
            .underlying
            .edges()
            .iter()
            .zip(&self.signs)
            .map(|(&(u, v), &s)| {
                let cut = ((mask >> u) ^ (mask >> v)) & 1 == 1;
                if cut {
                    s.flip()
                } else {
                    s
                }
            })
            .collect();
        Self::new(self.underlying.clone(), signs).expect("sign count matches")
    }

    /// Product of edge signs along the closed walk `cycle[0] .. cycle[k-1] cycle[0]`.
    pub fn cycle_sign(&self, cycle: &[usize]) -> Result<Sign> {
        if cycle.len() < 3 {
            return Err(Error::Argument("a cycle needs at least 3 vertices".into()));
        }
        let mut acc = Sign::Positive;
        for i in 0..cycle.len() {
            let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let s = self
                .sign(u, v)
                .ok_or_else(|| Error::Argument(format!("({u}, {v}) is not an edge")))?;
            acc = acc * s;
        }
        Ok(acc)
    }
}

/// A signed graph with a strictly positive weight on every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSignedGraph {
    signed: SignedGraph,
    weights: Vec<f64>,
}

impl WeightedSignedGraph {
    pub fn new(signed: SignedGraph, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != signed.order() {
            return Err(Error::Argument(format!(
                "{} weights given for {} vertices",
                weights.len(),
                signed.order()
            )));
        }
        if let Some((v, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::Domain(format!(
                "weight of vertex {v} must be positive, got {w}"
            )));
        }
        Ok(WeightedSignedGraph { signed, weights })
    }

    pub fn unit(signed: SignedGraph) -> Self {
        let n = signed.order();
        WeightedSignedGraph {
            signed,
            weights: vec![1.0; n],
        }
    }

    pub fn signed(&self) -> &SignedGraph {
        &self.signed
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        Graph::empty(0)
    } else {
        complete_multipartite(&vec![1; n])
    }
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Argument("a cycle needs at least 3 vertices".into()));
    }
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges)
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Result<Graph> {
    complete_multipartite(&[1, leaves])
}

/// Triangle {0,1,2} with a pendant vertex 3 attached to 0.
pub fn paw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).expect("valid paw")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("valid Petersen graph")
}

/// Complete multipartite graph whose classes have the given sizes, laid out
/// consecutively.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(Error::Argument("at least one part is required".into()));
    }
    if parts.contains(&0) {
        return Err(Error::Argument("part sizes must be positive".into()));
    }
    let n: usize = parts.iter().sum();
    check_order(n)?;
    let mut class = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        class.extend(std::iter::repeat_n(i, p));
    }
    let mut adj = vec![0u64; n];
    for u in 0..n {
        for v in 0..n {
            if class[u] != class[v] {
                adj[u] |= bit(v);
            }
        }
    }
    Ok(Graph::from_masks_unchecked(adj))
}

/// Signed complete graph on `n >= 4` vertices whose only negative edge is `{0, 1}`.
pub fn gamma_n(n: usize) -> Result<SignedGraph> {
    if n < 4 {
        return Err(Error::Argument(format!("gamma_n needs n >= 4, got {n}")));
    }
    let g = complete(n)?;
    let signs = g
        .edges()
        .iter()
        .map(|&e| if e == (0, 1) { Sign::Negative } else { Sign::Positive })
        .collect();
    SignedGraph::new(g, signs)
}

/// Erdős–Rényi graph conditioned on connectivity by rejection. Returns
/// `None` when `max_rejections` samples in a row are disconnected.
pub fn random_connected<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
    max_rejections: usize,
) -> Result<Option<Graph>> {
    check_order(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(format!("edge probability {p} outside [0, 1]")));
    }
    for _ in 0..max_rejections.max(1) {
        let mut adj = vec![0u64; n];
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    adj[u] |= bit(v);
                    adj[v] |= bit(u);
                }
            }
        }
        let g = Graph::from_masks_unchecked(adj);
        if g.is_connected() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Classes of the subgraph induced by `mask` when it is complete multipartite,
/// i.e. when non-adjacency is an equivalence relation on `mask`. Classes are
/// listed by smallest vertex. `None` for any other induced subgraph and for
/// the empty mask.
pub fn multipartite_classes(g: &Graph, mask: VertexMask) -> Option<Vec<Vec<usize>>> {
    if mask == 0 {
        return None;
    }
    let mut remaining = mask;
    let mut classes = Vec::new();
    while remaining != 0 {
        let v = remaining.trailing_zeros() as usize;
        let class = mask & !g.neighbors(v);
        // Every member must see exactly the same non-neighbours in `mask`.
        for u in mask_vertices(class) {
            if mask & !g.neighbors(u) != class {
                return None;
            }
        }
        if class & !remaining != 0 {
            return None;
        }
        remaining &= !class;
        classes.push(mask_vertices(class).collect());
    }
    Some(classes)
}

/// Connected components as vertex lists, in order of smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for s in 0..g.order() {
        if seen[s] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for u in mask_vertices(g.neighbors(v)) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
