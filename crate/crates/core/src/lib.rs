//! Seidel matrices of simple graphs.
//!
//! The Seidel matrix `S(G) = J - I - 2A(G)` has zero diagonal, `-1` for
//! adjacent pairs and `+1` otherwise. This crate builds it from a graph,
//! evaluates its determinant exactly, computes its spectrum, and runs
//! seeded experiments on uniformly random and exhaustively enumerated graphs:
//! how often `|det S| >= n - 1`, how the p-energies `sum |lambda|^p` compare
//! to `(n-1)^p + n - 1`, how the scaled spectrum fills the semicircle, and
//! how fast `|det S|` grows.

pub mod calibration;
pub mod edgelist;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod graph6;
pub mod rng;
pub mod seidel;
pub mod spectral;
pub mod stats;

pub use error::Error;
pub use graph::{enumerate, enumerate_with_cap, Graph, VertexSet};
pub use graph6::{emit_graph6, parse_graph6};
pub use seidel::{
    conjecture_holds, det_exact, det_oracle_cofactor, seidel_matrix, BigIntDet, DetMode,
    SeidelMatrix,
};
pub use spectral::{
    eigenvalues, empirical_tail, min_abs_eigenvalue, p_energy, seidel_energy,
    semicircle_tail_closed_form, Spectrum,
};
pub use stats::{wilson_interval, ProportionEstimate};

/// Version string recorded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
