//! Isomorphism-free enumeration of small connected graphs.
//!
//! The canonical form of a graph is the lexicographically smallest upper
//! triangle bitstring (graph6 column order, `x(0,1)` most significant) over
//! all vertex relabellings. It is found by backtracking over partial
//! labellings: fixing the first `k` positions fixes a prefix of the bitstring,
//! so a labelling whose prefix already exceeds the best one is abandoned.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};

pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Number of vertex pairs on `n` vertices.
fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Canonical upper-triangle mask of `g` and the relabelling achieving it:
/// `order[i]` is the original vertex placed at position `i`.
pub fn canonical_form(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.order();
    assert!(n <= 11, "canonical form is brute force; n = {n} is too large");
    if n <= 1 {
        return (0, (0..n).collect());
    }
    let total = pair_count(n);
    let mut search = Search {
        adj: g.adjacency_masks(),
        total,
        best: u64::MAX,
        best_order: Vec::new(),
        order: Vec::with_capacity(n),
    };
    search.extend(0, 0);
    (search.best, search.best_order)
}

struct Search<'a> {
    adj: &'a [u64],
    total: u32,
    best: u64,
    best_order: Vec<usize>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, used: u64, prefix: u64) {
        let k = self.order.len();
        let n = self.adj.len();
        if k == n {
            if prefix < self.best {
                self.best = prefix;
                self.best_order = self.order.clone();
            }
            return;
        }
        let fixed_after = pair_count(k + 1);
        for v in 0..n {
            if used & bit(v) != 0 {
                continue;
            }
            // New position k contributes pairs (0,k), (1,k), ..., (k-1,k).
            let mut p = prefix;
            for &u in &self.order {
                p = (p << 1) | ((self.adj[u] >> v) & 1);
            }
            if self.best != u64::MAX {
                let best_prefix = self.best >> (self.total - fixed_after);
                if p > best_prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.extend(used | bit(v), p);
            self.order.pop();
        }
    }
}

/// Graph on `n` vertices encoded by an upper-triangle mask.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let total = pair_count(n);
    let mut adj = vec![0u64; n];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if (mask >> (total - 1 - k)) & 1 == 1 {
                adj[u] |= bit(v);
                adj[v] |= bit(u);
            }
            k += 1;
        }
    }
    Graph::from_masks_unchecked(adj)
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (mask, _) = canonical_form(g);
    graph_from_mask(g.order(), mask)
}

/// Canonical masks of all graphs (connected or not) on `n` vertices.
fn all_canonical_masks(n: usize) -> HashSet<u64> {
    let mut level: HashSet<u64> = HashSet::from([0]);
    for k in 2..=n {
        let mut next = HashSet::new();
        for &mask in &level {
            let base = graph_from_mask(k - 1, mask);
            for nbrs in 0u64..(1 << (k - 1)) {
                let mut adj = base.adjacency_masks().to_vec();
                adj.push(nbrs);
                for u in 0..k - 1 {
                    if nbrs & bit(u) != 0 {
                        adj[u] |= bit(k - 1);
                    }
                }
                let g = Graph::from_masks_unchecked(adj);
                next.insert(canonical_form(&g).0);
            }
        }
        level = next;
    }
    level
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, sorted by edge count and then by canonical mask.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(Error::UnsupportedSize(format!(
            "native enumeration covers 1..={MAX_ENUMERATION_ORDER} vertices, got {n}; \
             supply larger graphs as a graph6 file"
        )));
    }
    let mut graphs: Vec<(usize, u64, Graph)> = all_canonical_masks(n)
        .into_iter()
        .map(|m| {
            let g = graph_from_mask(n, m);
            (g.size(), m, g)
        })
        .filter(|(_, _, g)| g.is_connected())
        .collect();
    graphs.sort_by_key(|&(m, mask, _)| (m, mask));
    Ok(graphs.into_iter().map(|(_, _, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(enumerate_connected_graphs(0), Err(Error::UnsupportedSize(_))));
        assert!(matches!(enumerate_connected_graphs(8), Err(Error::UnsupportedSize(_))));
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let p = path(5).unwrap();
        let q = p.permuted(&[3, 0, 4, 1, 2]).unwrap();
        assert_eq!(canonical_form(&p).0, canonical_form(&q).0);
        assert_ne!(canonical_form(&p).0, canonical_form(&star(4).unwrap()).0);
        assert_ne!(canonical_form(&p).0, canonical_form(&cycle(5).unwrap()).0);
    }

    #[test]
    fn canonical_order_reproduces_mask() {
        let g = cycle(6).unwrap().permuted(&[5, 2, 0, 3, 1, 4]).unwrap();
        let (mask, order) = canonical_form(&g);
        let mut relabel = vec![0; 6];
        for (pos, &v) in order.iter().enumerate() {
            relabel[v] = pos;
        }
        assert_eq!(g.permuted(&relabel).unwrap(), graph_from_mask(6, mask));
    }

    #[test]
    fn sorted_by_edge_count() {
        let gs = enumerate_connected_graphs(5).unwrap();
        assert!(gs.windows(2).all(|w| w[0].size() <= w[1].size()));
        assert_eq!(gs.last().unwrap(), &canonical_graph(&complete(5).unwrap()));
    }
}
