//! Quadratic forms over the standard simplex.
//!
//! `max_{x ∈ S} xᵀA(G)x = 1 − 1/ω(G)` for the adjacency matrix, and
//! `xᵀW(G)x ≤ 1` for the clique-weighted matrix `w_uv = c(uv)/(c(uv) − 1)`.
//! The optimizer here is replicator dynamics, which keeps every iterate on the
//! simplex and never decreases the objective for a symmetric nonnegative
//! matrix, so the value it returns is a certified lower bound on the maximum.

use rand::Rng;
use serde::Serialize;

use crate::clique::{clique_profile, CliqueProfile};
use crate::error::{Error, Result};
use crate::graph::{bit, multipartite_classes, Graph};
use crate::matrix::{build_matrix, MatrixKind, SymMatrix};
use crate::par;

pub const DEFAULT_ITERS: usize = 100_000;
pub const DEFAULT_STEP_TOL: f64 = 1e-12;
/// Weight of the favoured vertex in a biased start.
pub const BIAS: f64 = 0.9;
/// Per-class mass tolerance when detecting the equality structure.
pub const CLASS_MASS_TOL: f64 = 1e-6;
/// Coordinates at or below this count as outside the support.
pub const SUPPORT_EPS: f64 = 1e-12;

/// A point of the standard simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexPoint {
    x: Vec<f64>,
}

impl SimplexPoint {
    /// Accepts `x` when it is nonnegative and sums to 1 within `1e-9`.
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Domain("empty vector is not on the simplex".into()));
        }
        if let Some((v, xv)) = x.iter().enumerate().find(|(_, &xv)| !(xv >= 0.0)) {
            return Err(Error::Domain(format!("x[{v}] = {xv} is negative")));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(SimplexPoint { x })
    }

    pub fn uniform(n: usize) -> Self {
        SimplexPoint {
            x: vec![1.0 / n as f64; n],
        }
    }

    /// Mass `BIAS` on `v`, the rest spread evenly.
    pub fn biased(n: usize, v: usize) -> Self {
        if n == 1 {
            return Self::uniform(1);
        }
        let rest = (1.0 - BIAS) / (n - 1) as f64;
        let mut x = vec![rest; n];
        x[v] = BIAS;
        SimplexPoint { x }
    }

    /// Normalized i.i.d. exponentials: uniform on the simplex.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut x: Vec<f64> = (0..n)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let sum: f64 = x.iter().sum();
        x.iter_mut().for_each(|c| *c /= sum);
        SimplexPoint { x }
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&v| self.x[v] > SUPPORT_EPS).collect()
    }

    fn support_mask(&self) -> u64 {
        self.support().into_iter().fold(0, |m, v| m | bit(v))
    }
}

/// One replicator update `x_v ← x_v·(Mx)_v / xᵀMx`, renormalized. `None`
/// when `xᵀMx = 0`.
pub fn replicator_step(m: &SymMatrix, x: &[f64]) -> Result<Option<Vec<f64>>> {
    let mx = m.mul_vec(x);
    let value: f64 = mx.iter().zip(x).map(|(a, b)| a * b).sum();
    if value.is_nan() {
        return Err(Error::Numerical("objective is NaN".into()));
    }
    if value <= 0.0 {
        return Ok(None);
    }
    let mut y: Vec<f64> = x.iter().zip(&mx).map(|(xi, mi)| xi * mi / value).collect();
    let sum: f64 = y.iter().sum();
    if !sum.is_finite() || sum <= 0.0 {
        return Err(Error::Numerical(format!("replicator mass degenerated to {sum}")));
    }
    y.iter_mut().for_each(|c| *c /= sum);
    Ok(Some(y))
}

/// Outcome of [`simplex_qp_max`].
#[derive(Debug, Clone, Serialize)]
pub struct QpResult {
    pub value: f64,
    pub point: SimplexPoint,
    /// Index into the restart schedule that produced `point`.
    pub restart: usize,
}

/// Runs replicator dynamics from a single start.
pub fn replicator(m: &SymMatrix, start: SimplexPoint, iters: usize, tol: f64) -> Result<(f64, SimplexPoint)> {
    let mut x = start.x;
    for _ in 0..iters {
        let Some(y) = replicator_step(m, &x)? else {
            break;
        };
        let step = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if step < tol {
            break;
        }
    }
    let value = m.quadratic_form(&x);
    if value.is_nan() {
        return Err(Error::Numerical("objective is NaN".into()));
    }
    Ok((value, SimplexPoint { x }))
}

/// Best replicator value over the first `restarts` entries of the schedule
/// `[uniform, biased(0), …, biased(n−1)]`. Restarts may run concurrently;
/// ties go to the lowest restart index.
pub fn simplex_qp_max(m: &SymMatrix, restarts: usize, iters: usize, tol: f64) -> Result<QpResult> {
    let n = m.order();
    if n == 0 {
        return Err(Error::Argument("empty matrix".into()));
    }
    if restarts == 0 {
        return Err(Error::Argument("at least one restart is required".into()));
    }
    if !m.is_nonnegative() {
        return Err(Error::Argument("matrix must be entrywise nonnegative".into()));
    }
    if m.frobenius_norm() == 0.0 {
        return Ok(QpResult {
            value: 0.0,
            point: SimplexPoint::uniform(n),
            restart: 0,
        });
    }
    let count = restarts.min(n + 1);
    let runs = par::map_range(count, |k| {
        let start = if k == 0 {
            SimplexPoint::uniform(n)
        } else {
            SimplexPoint::biased(n, k - 1)
        };
        replicator(m, start, iters, tol)
    });
    let mut best: Option<QpResult> = None;
    for (k, run) in runs.into_iter().enumerate() {
        let (value, point) = run?;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(QpResult {
                value,
                point,
                restart: k,
            });
        }
    }
    Ok(best.expect("at least one restart"))
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueEstimate {
    pub omega: usize,
    pub value: f64,
    /// Estimate agrees with the exact clique number.
    pub certified: bool,
}

/// Clique number recovered from the optimum `1 − 1/ω` of the adjacency form.
pub fn ms_clique_estimate(g: &Graph) -> Result<CliqueEstimate> {
    if g.order() == 0 {
        return Err(Error::Domain("clique estimate needs at least one vertex".into()));
    }
    let a = build_matrix(g, MatrixKind::Adjacency)?;
    let best = simplex_qp_max(&a, g.order() + 1, DEFAULT_ITERS, DEFAULT_STEP_TOL)?;
    let omega = (1.0 / (1.0 - best.value)).round() as usize;
    Ok(CliqueEstimate {
        omega,
        value: best.value,
        certified: omega == clique_profile(g).omega,
    })
}

/// Clique-weighted matrix `w_uv = c(uv)/(c(uv) − 1)` on edges, zero elsewhere.
#[derive(Debug, Clone)]
pub struct MsWeightMatrix(SymMatrix);

impl MsWeightMatrix {
    pub fn new(g: &Graph, profile: &CliqueProfile) -> Self {
        let mut m = SymMatrix::zeros(g.order());
        for (&(u, v), &c) in g.edges().iter().zip(&profile.per_edge) {
            let c = c as f64;
            m.set(u, v, c / (c - 1.0));
        }
        MsWeightMatrix(m)
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightedMsCheck {
    pub value: f64,
    /// `value ≤ 1 + 1e-8`.
    pub holds: bool,
    /// The support induces a complete ω-partite graph with every class
    /// carrying mass `1/ω` (within [`CLASS_MASS_TOL`]).
    pub equality_structure: bool,
}

pub fn verify_weighted_ms(g: &Graph, x: &SimplexPoint) -> Result<WeightedMsCheck> {
    let profile = clique_profile(g);
    verify_weighted_ms_with(g, &profile, &MsWeightMatrix::new(g, &profile), x)
}

/// As [`verify_weighted_ms`] with a precomputed profile and weight matrix.
pub fn verify_weighted_ms_with(
    g: &Graph,
    profile: &CliqueProfile,
    w: &MsWeightMatrix,
    x: &SimplexPoint,
) -> Result<WeightedMsCheck> {
    if x.coords().len() != g.order() {
        return Err(Error::Domain(format!(
            "point has {} coordinates for {} vertices",
            x.coords().len(),
            g.order()
        )));
    }
    let value = w.matrix().quadratic_form(x.coords());
    let omega = profile.omega;
    let equality_structure = multipartite_classes(g, x.support_mask()).is_some_and(|classes| {
        classes.len() == omega
            && classes.iter().all(|cls| {
                let mass: f64 = cls.iter().map(|&v| x.coords()[v]).sum();
                (mass - 1.0 / omega as f64).abs() < CLASS_MASS_TOL
            })
    });
    Ok(WeightedMsCheck {
        value,
        holds: value <= 1.0 + 1e-8,
        equality_structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_multipartite, cycle, paw};

    #[test]
    fn complete_graph_optimum() {
        let a = build_matrix(&complete(3).unwrap(), MatrixKind::Adjacency).unwrap();
        let r = simplex_qp_max(&a, 1, DEFAULT_ITERS, DEFAULT_STEP_TOL).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bipartite_optimum_and_support() {
        let g = complete_multipartite(&[2, 3]).unwrap();
        let a = build_matrix(&g, MatrixKind::Adjacency).unwrap();
        let r = simplex_qp_max(&a, 6, DEFAULT_ITERS, DEFAULT_STEP_TOL).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let mask = r.point.support_mask();
        assert_eq!(multipartite_classes(&g, mask).map(|c| c.len()), Some(2));
    }

    #[test]
    fn trivial_inputs() {
        let r = simplex_qp_max(&SymMatrix::zeros(1), 1, 10, 1e-12).unwrap();
        assert_eq!((r.value, r.point.coords()), (0.0, &[1.0][..]));
        assert!(simplex_qp_max(&SymMatrix::identity(2).scale(-1.0), 1, 10, 1e-12).is_err());
        assert!(simplex_qp_max(&SymMatrix::identity(2), 0, 10, 1e-12).is_err());
    }

    #[test]
    fn clique_estimates() {
        for (g, w) in [
            (complete(4).unwrap(), 4),
            (cycle(5).unwrap(), 2),
            (complete_multipartite(&[3, 3, 3]).unwrap(), 3),
            (paw(), 3),
        ] {
            let e = ms_clique_estimate(&g).unwrap();
            assert_eq!(e.omega, w);
            assert!(e.certified);
        }
        assert_eq!(ms_clique_estimate(&Graph::empty(3).unwrap()).unwrap().omega, 1);
        assert!(ms_clique_estimate(&Graph::empty(0).unwrap()).is_err());
    }

    #[test]
    fn weighted_examples() {
        let k3 = complete(3).unwrap();
        let c = verify_weighted_ms(&k3, &SimplexPoint::uniform(3)).unwrap();
        assert!((c.value - 1.0).abs() < 1e-15);
        assert!(c.holds && c.equality_structure);

        let corner = SimplexPoint::new(vec![0.0, 1.0, 0.0]).unwrap();
        let c = verify_weighted_ms(&k3, &corner).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.holds && !c.equality_structure);

        let c5 = cycle(5).unwrap();
        let c = verify_weighted_ms(&c5, &SimplexPoint::uniform(5)).unwrap();
        assert!((c.value - 0.8).abs() < 1e-15);
        assert!(c.holds && !c.equality_structure);

        assert!(SimplexPoint::new(vec![0.5, 0.6]).is_err());
        assert!(SimplexPoint::new(vec![1.5, -0.5]).is_err());
        assert!(verify_weighted_ms(&c5, &SimplexPoint::uniform(4)).is_err());
    }

    #[test]
    fn weight_matrix_range() {
        let g = paw();
        let w = MsWeightMatrix::new(&g, &clique_profile(&g));
        for &(u, v) in g.edges() {
            let x = w.matrix().get(u, v);
            assert!(x > 1.0 && x <= 2.0);
        }
        assert_eq!(w.matrix().get(0, 3), 2.0);
        assert_eq!(w.matrix().get(0, 1), 1.5);
    }
}
