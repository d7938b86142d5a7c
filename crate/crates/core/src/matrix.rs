//! Dense symmetric matrices and the graph matrices built from them.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Sign, SignedGraph, WeightedSignedGraph};

/// Dense real symmetric matrix. Every write goes to both `(i, j)` and `(j, i)`.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        SymMatrix {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds from row-major rows; fails unless the rows form a symmetric square.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Argument("matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if rows[j][i] != x {
                    return Err(Error::Argument(format!("not symmetric at ({i}, {j})")));
                }
                m.data[i * n + j] = x;
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.order + j] = x;
        self.data[j * self.order + i] = x;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, x: f64) {
        let y = self.get(i, j) + x;
        self.set(i, j, y);
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.order);
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        SymMatrix {
            order: self.order,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.order, other.order);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0.0)
    }

    pub(crate) fn data(&self) -> &[f64] {
        &self.data
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = (0..self.order).map(|i| self.row(i)).collect();
        f.debug_struct("SymMatrix")
            .field("order", &self.order)
            .field("rows", &rows)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixKind {
    Adjacency,
    Degree,
    Laplacian,
    SignlessLaplacian,
    /// `αD + (1 − α)A`, `α ∈ [0, 1]`.
    AAlpha(f64),
    /// Adjacency carrying edge signs.
    SignedAdjacency,
    /// Vertex-weighted degree matrix, diagonal `Σ_{u~v} w(u)`.
    WeightedDegree,
    /// Off-diagonal `σ(uv)·√(w(u)w(v))`.
    WeightedSignedAdjacency,
    /// Weighted degree plus weighted signed adjacency.
    SignedSignlessLaplacian,
    /// Weighted degree minus weighted signed adjacency.
    SignedLaplacian,
}

/// Any graph a matrix can be built from. Plain graphs are treated as
/// all-positive and unsigned inputs as unit-weighted.
#[derive(Debug, Clone, Copy)]
pub enum GraphInput<'a> {
    Plain(&'a Graph),
    Signed(&'a SignedGraph),
    Weighted(&'a WeightedSignedGraph),
}

impl<'a> From<&'a Graph> for GraphInput<'a> {
    fn from(g: &'a Graph) -> Self {
        GraphInput::Plain(g)
    }
}
impl<'a> From<&'a SignedGraph> for GraphInput<'a> {
    fn from(s: &'a SignedGraph) -> Self {
        GraphInput::Signed(s)
    }
}
impl<'a> From<&'a WeightedSignedGraph> for GraphInput<'a> {
    fn from(w: &'a WeightedSignedGraph) -> Self {
        GraphInput::Weighted(w)
    }
}

impl GraphInput<'_> {
    fn graph(&self) -> &Graph {
        match self {
            GraphInput::Plain(g) => g,
            GraphInput::Signed(s) => s.underlying(),
            GraphInput::Weighted(w) => w.signed().underlying(),
        }
    }

    fn sign(&self, u: usize, v: usize) -> f64 {
        let s = match self {
            GraphInput::Plain(_) => Sign::Positive,
            GraphInput::Signed(s) => s.sign(u, v).expect("edge"),
            GraphInput::Weighted(w) => w.signed().sign(u, v).expect("edge"),
        };
        f64::from(s.value())
    }

    fn weights(&self) -> Cow<'_, [f64]> {
        match self {
            GraphInput::Weighted(w) => Cow::Borrowed(w.weights()),
            _ => Cow::Owned(vec![1.0; self.graph().order()]),
        }
    }
}

pub fn build_matrix<'a>(input: impl Into<GraphInput<'a>>, kind: MatrixKind) -> Result<SymMatrix> {
    let input = input.into();
    let g = input.graph();
    let n = g.order();
    let mut m = SymMatrix::zeros(n);
    // Coefficients of (degree, adjacency) for the unsigned kinds.
    let unsigned = |da: f64, aa: f64, m: &mut SymMatrix| {
        for v in 0..n {
            m.set(v, v, da * g.degree(v) as f64);
        }
        for &(u, v) in g.edges() {
            m.set(u, v, aa);
        }
    };
    // Coefficients of (weighted degree, weighted signed adjacency).
    let weighted = |da: f64, aa: f64, signed: bool, m: &mut SymMatrix| {
        let w = input.weights();
        for &(u, v) in g.edges() {
            m.add(u, u, da * w[v]);
            m.add(v, v, da * w[u]);
            let s = if signed { input.sign(u, v) } else { 1.0 };
            m.set(u, v, aa * s * (w[u] * w[v]).sqrt());
        }
    };
    match kind {
        MatrixKind::Adjacency => unsigned(0.0, 1.0, &mut m),
        MatrixKind::Degree => unsigned(1.0, 0.0, &mut m),
        MatrixKind::Laplacian => unsigned(1.0, -1.0, &mut m),
        MatrixKind::SignlessLaplacian => unsigned(1.0, 1.0, &mut m),
        MatrixKind::AAlpha(alpha) => {
            if !(0.0..=1.0).contains(&alpha) {
                return Err(Error::Argument(format!("alpha = {alpha} outside [0, 1]")));
            }
            unsigned(alpha, 1.0 - alpha, &mut m)
        }
        MatrixKind::SignedAdjacency => {
            for &(u, v) in g.edges() {
                m.set(u, v, input.sign(u, v));
            }
        }
        MatrixKind::WeightedDegree => weighted(1.0, 0.0, false, &mut m),
        MatrixKind::WeightedSignedAdjacency => weighted(0.0, 1.0, true, &mut m),
        MatrixKind::SignedSignlessLaplacian => weighted(1.0, 1.0, true, &mut m),
        MatrixKind::SignedLaplacian => weighted(1.0, -1.0, true, &mut m),
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gamma_n, path, petersen, paw};

    fn rows(m: &SymMatrix) -> Vec<Vec<f64>> {
        (0..m.order()).map(|i| m.row(i).to_vec()).collect()
    }

    #[test]
    fn q_of_path() {
        let q = build_matrix(&path(3).unwrap(), MatrixKind::SignlessLaplacian).unwrap();
        assert_eq!(
            rows(&q),
            vec![vec![1.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 1.0]]
        );
    }

    #[test]
    fn q_is_l_plus_two_a_and_a_alpha_mixes() {
        for g in [paw(), petersen(), path(5).unwrap()] {
            let a = build_matrix(&g, MatrixKind::Adjacency).unwrap();
            let d = build_matrix(&g, MatrixKind::Degree).unwrap();
            let l = build_matrix(&g, MatrixKind::Laplacian).unwrap();
            let q = build_matrix(&g, MatrixKind::SignlessLaplacian).unwrap();
            for i in 0..g.order() {
                for j in 0..g.order() {
                    assert_eq!(q.get(i, j), l.get(i, j) + 2.0 * a.get(i, j));
                }
            }
            for alpha in [0.0, 0.25, 0.5, 1.0] {
                let aa = build_matrix(&g, MatrixKind::AAlpha(alpha)).unwrap();
                for i in 0..g.order() {
                    for j in 0..g.order() {
                        let want = alpha * d.get(i, j) + (1.0 - alpha) * a.get(i, j);
                        assert!((aa.get(i, j) - want).abs() < 1e-15);
                    }
                }
            }
            let half = build_matrix(&g, MatrixKind::AAlpha(0.5)).unwrap();
            assert!(half.max_abs_diff(&q.scale(0.5)) < 1e-15);
        }
    }

    #[test]
    fn alpha_range_checked() {
        let g = path(3).unwrap();
        assert!(build_matrix(&g, MatrixKind::AAlpha(1.5)).is_err());
        assert!(build_matrix(&g, MatrixKind::AAlpha(-0.1)).is_err());
    }

    #[test]
    fn signed_q_of_gamma_four() {
        let s = gamma_n(4).unwrap();
        let q = build_matrix(&s, MatrixKind::SignedSignlessLaplacian).unwrap();
        for i in 0..4 {
            assert_eq!(q.get(i, i), 3.0);
            for j in 0..4 {
                if i != j {
                    let want = if (i.min(j), i.max(j)) == (0, 1) { -1.0 } else { 1.0 };
                    assert_eq!(q.get(i, j), want);
                }
            }
        }
        // Q(Γ) = L(−Γ)
        let l_neg = build_matrix(&s.negated(), MatrixKind::SignedLaplacian).unwrap();
        assert_eq!(q, l_neg);
    }

    #[test]
    fn positive_unit_signed_q_is_q() {
        let g = petersen();
        let s = SignedGraph::all_positive(g.clone());
        let ws = WeightedSignedGraph::unit(s.clone());
        let q = build_matrix(&g, MatrixKind::SignlessLaplacian).unwrap();
        assert_eq!(build_matrix(&ws, MatrixKind::SignedSignlessLaplacian).unwrap(), q);
        assert_eq!(build_matrix(&s, MatrixKind::SignedSignlessLaplacian).unwrap(), q);
    }

    #[test]
    fn weighted_entries() {
        let s = SignedGraph::new(path(2).unwrap(), vec![Sign::Negative]).unwrap();
        let ws = WeightedSignedGraph::new(s, vec![2.0, 3.0]).unwrap();
        let q = build_matrix(&ws, MatrixKind::SignedSignlessLaplacian).unwrap();
        assert_eq!(q.get(0, 0), 3.0);
        assert_eq!(q.get(1, 1), 2.0);
        assert!((q.get(0, 1) + 6f64.sqrt()).abs() < 1e-15);
    }
}
