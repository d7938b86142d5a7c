//! Cyclic Jacobi eigensolver and the largest eigenvalues the bounds compare
//! against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, WeightedSignedGraph};
use crate::matrix::{build_matrix, MatrixKind, SymMatrix};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Entries smaller than this are treated as zero when fixing eigenvector signs.
const SIGN_EPS: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Descending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector of `values[k]`, first nonzero
    /// coordinate positive.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Largest eigenvalue with its eigenvector.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralSummary {
    pub lambda_max: f64,
    /// Unit 2-norm, first nonzero coordinate positive.
    pub eigenvector: Vec<f64>,
    /// `‖Mx − λx‖_∞`.
    pub residual: f64,
}

/// Full eigendecomposition by cyclic Jacobi rotations. Stops once the
/// off-diagonal Frobenius mass is below `tol·‖m‖_F`.
pub fn eigen_sym(m: &SymMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !(tol > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    let n = m.order();
    let mut a = m.data().to_vec();
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = tol * m.frobenius_norm();
    let off = |a: &[f64]| {
        let mut s = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                s += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut residual_off = off(&a);
    while residual_off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps: order {n}, \
                 off-diagonal mass {residual_off:e}, target {threshold:e}"
            )));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        residual_off = off(&a);
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]).then(i.cmp(&j)));
    let values = idx.iter().map(|&i| a[i * n + i]).collect();
    let vectors = idx
        .iter()
        .map(|&j| {
            let mut col: Vec<f64> = (0..n).map(|k| v[k * n + j]).collect();
            fix_sign(&mut col);
            col
        })
        .collect();
    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
    })
}

fn fix_sign(x: &mut [f64]) {
    if let Some(&first) = x.iter().find(|c| c.abs() > SIGN_EPS) {
        if first < 0.0 {
            x.iter_mut().for_each(|c| *c = -*c);
        }
    }
}

pub fn residual(m: &SymMatrix, lambda: f64, x: &[f64]) -> f64 {
    m.mul_vec(x)
        .iter()
        .zip(x)
        .map(|(mx, xi)| (mx - lambda * xi).abs())
        .fold(0.0, f64::max)
}

/// Largest eigenpair of an arbitrary symmetric matrix. The empty matrix has
/// `λ = 0` and an empty eigenvector.
pub fn top_eigenpair(m: &SymMatrix, tol: f64) -> Result<SpectralSummary> {
    if m.order() == 0 {
        return Ok(SpectralSummary {
            lambda_max: 0.0,
            eigenvector: Vec::new(),
            residual: 0.0,
        });
    }
    let mut eig = eigen_sym(m, tol)?;
    let lambda_max = eig.values[0];
    let eigenvector = eig.vectors.swap_remove(0);
    let residual = residual(m, lambda_max, &eigenvector);
    Ok(SpectralSummary {
        lambda_max,
        eigenvector,
        residual,
    })
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Domain("graph is disconnected".into()))
    }
}

/// `q(G)`, the largest eigenvalue of the signless Laplacian, with its Perron vector.
pub fn q_index(g: &Graph) -> Result<SpectralSummary> {
    q_index_tol(g, DEFAULT_EIGEN_TOL)
}

pub fn q_index_tol(g: &Graph, tol: f64) -> Result<SpectralSummary> {
    require_connected(g)?;
    top_eigenpair(&build_matrix(g, MatrixKind::SignlessLaplacian)?, tol)
}

/// Spectral radius of the adjacency matrix.
pub fn lambda1(g: &Graph) -> Result<SpectralSummary> {
    lambda1_tol(g, DEFAULT_EIGEN_TOL)
}

pub fn lambda1_tol(g: &Graph, tol: f64) -> Result<SpectralSummary> {
    require_connected(g)?;
    top_eigenpair(&build_matrix(g, MatrixKind::Adjacency)?, tol)
}

pub fn lambda1_a_alpha(g: &Graph, alpha: f64) -> Result<SpectralSummary> {
    lambda1_a_alpha_tol(g, alpha, DEFAULT_EIGEN_TOL)
}

pub fn lambda1_a_alpha_tol(g: &Graph, alpha: f64, tol: f64) -> Result<SpectralSummary> {
    require_connected(g)?;
    top_eigenpair(&build_matrix(g, MatrixKind::AAlpha(alpha))?, tol)
}

/// Largest eigenvalue of the vertex-weighted signed signless Laplacian. The
/// eigenvector may have mixed signs.
pub fn q_signed(ws: &WeightedSignedGraph) -> Result<SpectralSummary> {
    q_signed_tol(ws, DEFAULT_EIGEN_TOL)
}

pub fn q_signed_tol(ws: &WeightedSignedGraph, tol: f64) -> Result<SpectralSummary> {
    require_connected(ws.signed().underlying())?;
    top_eigenpair(&build_matrix(ws, MatrixKind::SignedSignlessLaplacian)?, tol)
}

/// Perron vector of `Q(G)` rescaled to 1-norm 1.
pub fn perron_simplex_vector(g: &Graph) -> Result<Vec<f64>> {
    let s = q_index(g)?;
    let sum: f64 = s.eigenvector.iter().sum();
    Ok(s.eigenvector.iter().map(|x| x / sum).collect())
}

/// Edge-weighted adjacency `M_uv = (x_u + x_v) / (2√(x_u x_v))` built from a
/// positive vector on the simplex. When `x` is the Perron vector of `Q(G)`,
/// `λ₁(M) = q(G)/2` with eigenvector `√x`.
pub fn half_q_matrix(g: &Graph, x: &[f64]) -> Result<SymMatrix> {
    require_connected(g)?;
    if x.len() != g.order() {
        return Err(Error::Argument(format!(
            "vector has {} entries for {} vertices",
            x.len(),
            g.order()
        )));
    }
    if let Some((v, xv)) = x.iter().enumerate().find(|(_, &xv)| !(xv > 0.0)) {
        return Err(Error::Domain(format!("x[{v}] = {xv} is not positive")));
    }
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("x has 1-norm {sum}, expected 1")));
    }
    let mut m = SymMatrix::zeros(g.order());
    for &(u, v) in g.edges() {
        m.set(u, v, (x[u] + x[v]) / (2.0 * (x[u] * x[v]).sqrt()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_multipartite, cycle, gamma_n, path, paw, star};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn diagonal_sorted_descending() {
        let e = eigen_sym(&SymMatrix::from_diagonal(&[3.0, 1.0, 2.0]), DEFAULT_EIGEN_TOL).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
        assert_eq!(e.vectors[1], vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn triangle_and_path_spectra() {
        let a = build_matrix(&complete(3).unwrap(), MatrixKind::Adjacency).unwrap();
        let e = eigen_sym(&a, DEFAULT_EIGEN_TOL).unwrap();
        for (got, want) in e.values.iter().zip([2.0, -1.0, -1.0]) {
            assert!(close(*got, want));
        }
        // Q(P_3) has characteristic polynomial λ(λ − 1)(λ − 3).
        let q = build_matrix(&path(3).unwrap(), MatrixKind::SignlessLaplacian).unwrap();
        let e = eigen_sym(&q, DEFAULT_EIGEN_TOL).unwrap();
        for (got, want) in e.values.iter().zip([3.0, 1.0, 0.0]) {
            assert!(close(*got, want));
        }
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let m = build_matrix(&paw(), MatrixKind::SignlessLaplacian).unwrap();
        let e = eigen_sym(&m, DEFAULT_EIGEN_TOL).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let dot: f64 = e.vectors[i].iter().zip(&e.vectors[j]).map(|(a, b)| a * b).sum();
                assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-9);
            }
            assert!(residual(&m, e.values[i], &e.vectors[i]) < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let m = SymMatrix::from_diagonal(&[1.0, f64::NAN]);
        assert!(matches!(eigen_sym(&m, 1e-12), Err(Error::Numerical(_))));
        assert!(eigen_sym(&SymMatrix::identity(2), 0.0).is_err());
    }

    #[test]
    fn q_index_examples() {
        for n in 2..8 {
            let s = q_index(&complete(n).unwrap()).unwrap();
            assert!(close(s.lambda_max, 2.0 * (n as f64 - 1.0)));
        }
        for (a, b) in [(1, 3), (2, 3), (3, 4)] {
            let s = q_index(&complete_multipartite(&[a, b]).unwrap()).unwrap();
            assert!(close(s.lambda_max, (a + b) as f64));
        }
        let s = q_index(&path(4).unwrap()).unwrap();
        assert!(close(s.lambda_max, 2.0 + 2f64.sqrt()));
        assert!(s.eigenvector.iter().all(|&x| x > 0.0));
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(q_index(&disconnected), Err(Error::Domain(_))));
    }

    #[test]
    fn other_radii() {
        assert!(close(lambda1(&cycle(5).unwrap()).unwrap().lambda_max, 2.0));
        let g = paw();
        let half = lambda1_a_alpha(&g, 0.5).unwrap().lambda_max;
        assert!(close(half, q_index(&g).unwrap().lambda_max / 2.0));
        for n in [4usize, 7, 12] {
            let ws = WeightedSignedGraph::unit(gamma_n(n).unwrap());
            let nf = n as f64;
            let want = (3.0 * nf - 6.0 + (nf * nf + 4.0 * nf - 12.0).sqrt()) / 2.0;
            assert!(close(q_signed(&ws).unwrap().lambda_max, want));
        }
    }

    #[test]
    fn half_q_examples() {
        let k2 = complete(2).unwrap();
        let m = half_q_matrix(&k2, &[0.5, 0.5]).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert!(close(top_eigenpair(&m, 1e-12).unwrap().lambda_max, 1.0));

        let k12 = star(2).unwrap();
        let x = perron_simplex_vector(&k12).unwrap();
        let m = half_q_matrix(&k12, &x).unwrap();
        assert!(close(top_eigenpair(&m, 1e-12).unwrap().lambda_max, 1.5));

        assert!(matches!(half_q_matrix(&k2, &[1.0, 0.0]), Err(Error::Domain(_))));
        assert!(matches!(half_q_matrix(&k2, &[0.7, 0.7]), Err(Error::Domain(_))));
    }
}
