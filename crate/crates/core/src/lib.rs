//! Localized spectral Turán bounds for the signless Laplacian.
//!
//! The crate computes clique numbers localized to vertices and edges, the
//! spectral radii of the adjacency, signless Laplacian and `A_α` matrices,
//! and compares them against every vertex- and edge-localized bound, for
//! plain graphs as well as vertex-weighted signed graphs. [`harness`] drives
//! exhaustive and randomized verification runs.

pub mod bounds;
pub mod clique;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod matrix;
pub mod motzkin_straus;
pub mod par;
pub mod sg;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{Graph, Sign, SignedGraph, WeightedSignedGraph};
pub use matrix::{build_matrix, MatrixKind, SymMatrix};
