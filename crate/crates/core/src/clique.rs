//! Exact clique numbers: global, through each vertex and through each edge,
//! for plain graphs and for balanced cliques of signed graphs.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, mask_vertices, Graph, Sign, SignedGraph};

pub const MAX_FRUSTRATION_ORDER: usize = 24;

/// Localized clique numbers of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueProfile {
    pub omega: usize,
    /// `per_vertex[v]` is the order of the largest clique containing `v`.
    pub per_vertex: Vec<usize>,
    /// Aligned with [`Graph::edges`].
    pub per_edge: Vec<usize>,
    /// One maximum clique, ascending.
    pub witness: Vec<usize>,
}

/// Localized balanced clique numbers of a signed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedCliqueProfile {
    pub omega_b: usize,
    pub per_vertex: Vec<usize>,
    pub per_edge: Vec<usize>,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceCertificate {
    pub balanced: bool,
    /// A switching that makes every edge positive (present iff balanced).
    pub switching: Option<Vec<Sign>>,
    /// A cycle with sign product −1 (present iff unbalanced).
    pub odd_cycle: Option<Vec<usize>>,
}

/// Bron–Kerbosch with pivoting over up to 128 vertices. `visit` receives
/// every maximal clique. The pivot maximises `|P ∩ N(u)|` over `P ∪ X`, lowest
/// index on ties, and branches are taken in ascending vertex order.
pub(crate) fn maximal_cliques(adj: &[u128], mut visit: impl FnMut(u128)) {
    let n = adj.len();
    let all = if n >= 128 { u128::MAX } else { (1u128 << n) - 1 };
    if n == 0 {
        return;
    }
    bk(adj, 0, all, 0, &mut visit);
}

fn bk(adj: &[u128], r: u128, mut p: u128, mut x: u128, visit: &mut impl FnMut(u128)) {
    if p == 0 {
        if x == 0 {
            visit(r);
        }
        return;
    }
    let mut pivot = 0;
    let mut best = -1i32;
    let mut px = p | x;
    while px != 0 {
        let u = px.trailing_zeros() as usize;
        px &= px - 1;
        let d = (p & adj[u]).count_ones() as i32;
        if d > best {
            best = d;
            pivot = u;
        }
    }
    let mut branch = p & !adj[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        let vb = 1u128 << v;
        bk(adj, r | vb, p & adj[v], x & adj[v], visit);
        p &= !vb;
        x |= vb;
    }
}

fn u128_vertices(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub fn clique_profile(g: &Graph) -> CliqueProfile {
    let n = g.order();
    let adj: Vec<u128> = g.adjacency_masks().iter().map(|&m| m as u128).collect();
    let mut per_vertex = vec![0usize; n];
    let mut per_edge = vec![0usize; g.size()];
    let mut witness = 0u128;
    let mut omega = 0;
    maximal_cliques(&adj, |c| {
        let size = c.count_ones() as usize;
        if size > omega {
            omega = size;
            witness = c;
        }
        for v in u128_vertices(c) {
            per_vertex[v] = per_vertex[v].max(size);
        }
        if size >= 2 {
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                if c >> u & 1 == 1 && c >> v & 1 == 1 {
                    per_edge[e] = per_edge[e].max(size);
                }
            }
        }
    });
    CliqueProfile {
        omega,
        per_vertex,
        per_edge,
        witness: u128_vertices(witness).collect(),
    }
}

/// Clique number and one maximum clique.
pub fn max_clique(g: &Graph) -> (usize, Vec<usize>) {
    let p = clique_profile(g);
    (p.omega, p.witness)
}

/// Balanced cliques of `s` are exactly the cliques of the doubled graph on
/// pairs `(v, η)`, where `(u, a) ~ (v, b)` iff `uv` is an edge with
/// `σ(uv) = a·b`. Vertex `(v, +)` is index `2v`, `(v, −)` is `2v + 1`.
fn switching_cover(s: &SignedGraph) -> Vec<u128> {
    let n = s.order();
    let g = s.underlying();
    let mut adj = vec![0u128; 2 * n];
    for &(u, v) in g.edges() {
        let neg = s.sign(u, v) == Some(Sign::Negative);
        for a in 0..2usize {
            // b = a when positive, b = 1 − a when negative
            let b = if neg { 1 - a } else { a };
            let x = 2 * u + a;
            let y = 2 * v + b;
            adj[x] |= 1u128 << y;
            adj[y] |= 1u128 << x;
        }
    }
    adj
}

pub fn balanced_clique_profile(s: &SignedGraph) -> BalancedCliqueProfile {
    let n = s.order();
    let g = s.underlying();
    assert!(2 * n <= 128, "balanced clique search supports at most 64 vertices");
    let cover = switching_cover(s);
    let mut per_vertex = vec![0usize; n];
    let mut per_edge = vec![0usize; g.size()];
    let mut omega_b = 0;
    let mut witness = 0u64;
    maximal_cliques(&cover, |c| {
        let size = c.count_ones() as usize;
        let mut vs = 0u64;
        for x in u128_vertices(c) {
            vs |= bit(x / 2);
        }
        if size > omega_b {
            omega_b = size;
            witness = vs;
        }
        for v in mask_vertices(vs) {
            per_vertex[v] = per_vertex[v].max(size);
        }
        if size >= 2 {
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                if vs & bit(u) != 0 && vs & bit(v) != 0 {
                    per_edge[e] = per_edge[e].max(size);
                }
            }
        }
    });
    BalancedCliqueProfile {
        omega_b,
        per_vertex,
        per_edge,
        witness: mask_vertices(witness).collect(),
    }
}

/// BFS per component with `η(root) = +1` and `η(u) = σ(uv)·η(v)` across tree
/// edges. The first inconsistent non-tree edge closes a negative cycle.
pub fn is_balanced(s: &SignedGraph) -> BalanceCertificate {
    let n = s.order();
    let g = s.underlying();
    let mut eta: Vec<Option<Sign>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if eta[root].is_some() {
            continue;
        }
        eta[root] = Some(Sign::Positive);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let ev = eta[v].expect("visited");
            for u in mask_vertices(g.neighbors(v)) {
                let want = s.sign(u, v).expect("edge") * ev;
                match eta[u] {
                    None => {
                        eta[u] = Some(want);
                        parent[u] = v;
                        depth[u] = depth[v] + 1;
                        queue.push_back(u);
                    }
                    Some(have) if have != want => {
                        return BalanceCertificate {
                            balanced: false,
                            switching: None,
                            odd_cycle: Some(tree_cycle(&parent, &depth, u, v)),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    BalanceCertificate {
        balanced: true,
        switching: Some(eta.into_iter().map(|e| e.expect("all visited")).collect()),
        odd_cycle: None,
    }
}

/// Cycle formed by the non-tree edge `uv` and the tree paths to their
/// common ancestor, listed `u → … → lca → … → v`.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![];
    let mut right = vec![];
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    left.extend(right.into_iter().rev());
    left
}

/// Minimum number of negative edges over all switchings, which equals the
/// minimum number of edge deletions leaving a balanced graph. Vertex 0 is
/// never switched; the remaining `2^(n−1)` switchings are walked in Gray
/// code order.
pub fn frustration_index(s: &SignedGraph) -> Result<usize> {
    let n = s.order();
    if n > MAX_FRUSTRATION_ORDER {
        return Err(Error::UnsupportedSize(format!(
            "frustration index is brute force up to {MAX_FRUSTRATION_ORDER} vertices, got {n}"
        )));
    }
    if n <= 1 {
        return Ok(0);
    }
    let g = s.underlying();
    let mut current: Vec<u64> = (0..n).map(|v| s.negative_neighbors(v)).collect();
    let mut count = s.negative_edge_count();
    let mut best = count;
    let steps = 1u64 << (n - 1);
    for i in 1..steps {
        // Gray code: toggle vertex 1 + (index of lowest set bit of i).
        let v = 1 + i.trailing_zeros() as usize;
        let nbrs = g.neighbors(v);
        let k = current[v].count_ones() as usize;
        count = count - k + (nbrs.count_ones() as usize - k);
        current[v] ^= nbrs;
        for u in mask_vertices(nbrs) {
            current[u] ^= bit(v);
        }
        best = best.min(count);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_multipartite, cycle, gamma_n, path, paw, petersen};

    #[test]
    fn max_clique_examples() {
        assert_eq!(max_clique(&complete(5).unwrap()), (5, vec![0, 1, 2, 3, 4]));
        let (w, c) = max_clique(&cycle(5).unwrap());
        assert_eq!(w, 2);
        assert!(cycle(5).unwrap().has_edge(c[0], c[1]));
        assert_eq!(max_clique(&petersen()).0, 2);
    }

    #[test]
    fn profile_of_paw() {
        let p = clique_profile(&paw());
        assert_eq!(p.omega, 3);
        assert_eq!(p.per_vertex, vec![3, 3, 3, 2]);
        // edges: 01, 02, 03, 12
        assert_eq!(p.per_edge, vec![3, 3, 2, 3]);
        assert_eq!(p.witness, vec![0, 1, 2]);
    }

    #[test]
    fn profile_of_bipartite_and_complete() {
        let p = clique_profile(&complete_multipartite(&[2, 3]).unwrap());
        assert!(p.per_vertex.iter().all(|&c| c == 2));
        assert!(p.per_edge.iter().all(|&c| c == 2));
        let k6 = clique_profile(&complete(6).unwrap());
        assert!(k6.per_vertex.iter().all(|&c| c == 6));
        assert!(k6.per_edge.iter().all(|&c| c == 6));
    }

    #[test]
    fn isolated_vertex_has_unit_clique() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(clique_profile(&g).per_vertex, vec![2, 2, 1]);
        assert_eq!(clique_profile(&Graph::empty(0).unwrap()).omega, 0);
    }

    #[test]
    fn balance_certificates() {
        let k4 = SignedGraph::all_positive(complete(4).unwrap());
        let c = is_balanced(&k4);
        assert!(c.balanced);
        assert_eq!(c.switching, Some(vec![Sign::Positive; 4]));

        let tri = SignedGraph::new(
            complete(3).unwrap(),
            vec![Sign::Negative, Sign::Positive, Sign::Positive],
        )
        .unwrap();
        let c = is_balanced(&tri);
        assert!(!c.balanced);
        let cyc = c.odd_cycle.unwrap();
        let mut sorted = cyc.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2]);
        assert_eq!(tri.cycle_sign(&cyc).unwrap(), Sign::Negative);

        let g4 = gamma_n(4).unwrap();
        let c = is_balanced(&g4);
        assert!(!c.balanced);
        assert_eq!(g4.cycle_sign(&c.odd_cycle.unwrap()).unwrap(), Sign::Negative);
    }

    #[test]
    fn balancing_switch_makes_all_positive() {
        let s = SignedGraph::all_positive(petersen()).switch(&[0, 3, 7]).unwrap();
        let c = is_balanced(&s);
        assert!(c.balanced);
        let flip: Vec<usize> = c
            .switching
            .unwrap()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == Sign::Negative)
            .map(|(v, _)| v)
            .collect();
        assert_eq!(s.switch(&flip).unwrap().negative_edge_count(), 0);
    }

    #[test]
    fn balanced_profile_of_gamma_four() {
        let s = gamma_n(4).unwrap();
        let p = balanced_clique_profile(&s);
        assert_eq!(p.omega_b, 3);
        assert_eq!(p.per_vertex, vec![3; 4]);
        let e01 = s.underlying().edge_index(0, 1).unwrap();
        for (e, &c) in p.per_edge.iter().enumerate() {
            assert_eq!(c, if e == e01 { 2 } else { 3 });
        }
    }

    #[test]
    fn balanced_profile_matches_plain_when_positive() {
        for g in [paw(), petersen(), complete_multipartite(&[1, 2, 2]).unwrap()] {
            let p = clique_profile(&g);
            let b = balanced_clique_profile(&SignedGraph::all_positive(g));
            assert_eq!((b.omega_b, &b.per_vertex, &b.per_edge), (p.omega, &p.per_vertex, &p.per_edge));
        }
        let k2 = SignedGraph::new(path(2).unwrap(), vec![Sign::Negative]).unwrap();
        assert_eq!(balanced_clique_profile(&k2).omega_b, 2);
    }

    #[test]
    fn frustration_examples() {
        let balanced = SignedGraph::all_positive(petersen()).switch(&[1, 2]).unwrap();
        assert_eq!(frustration_index(&balanced).unwrap(), 0);
        assert_eq!(frustration_index(&gamma_n(4).unwrap()).unwrap(), 1);
        let c5 = SignedGraph::all_positive(cycle(5).unwrap()).negated();
        assert_eq!(frustration_index(&c5).unwrap(), 1);
        let big = SignedGraph::all_positive(Graph::empty(25).unwrap());
        assert!(matches!(frustration_index(&big), Err(Error::UnsupportedSize(_))));
    }
}
