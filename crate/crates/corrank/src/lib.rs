//! Detection and factorization of genuine multipartite correlations in
//! n-qubit states via coefficient-matrix ranks.
//!
//! A pure state carries genuine n-partite correlations exactly when the
//! coefficient matrix of every bipartite cut has rank at least 2; mixed
//! states reduce to the pure case through one-hot-indexed purifications, with
//! an independent marginal-comparison oracle as cross-check. On top of the
//! detection tests the crate factorizes states into genuinely correlated
//! components, computes the degree of correlations, and produces the rank-k
//! sum-of-products decomposition across any cut.
//!
//! Start with [`catalog`] for ready-made states, [`pure`] / [`mixed`] for the
//! analysis entry points, and the `examples/` directory for runnable tours of
//! each capability. The `corrank` binary exposes the same operations over a
//! JSON document format.

pub mod bipartition;
pub mod catalog;
pub mod cli;
pub mod coeff;
pub mod document;
pub mod error;
pub mod linalg;
pub mod mixed;
pub mod pure;
pub mod state;

pub use bipartition::Bipartition;
pub use coeff::{coefficient_matrix, cut_rank, CoefficientMatrix};
pub use error::{Error, Result};
pub use linalg::{CMatrix, EigenSystem};
pub use mixed::{CorrelationReport, Method};
pub use state::{AnyState, MixedState, PureState, SymmetricState};

/// The three thresholds every decision routine consults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative singular-value cutoff for rank decisions.
    pub rank: f64,
    /// Absolute Frobenius bound for density-matrix comparisons.
    pub frobenius: f64,
    /// Relative eigenvalue cutoff (times the trace) for spectral ranks.
    pub eigen_zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: linalg::DEFAULT_RANK_TOL,
            frobenius: 1e-9,
            eigen_zero: linalg::DEFAULT_EIGEN_ZERO_TOL,
        }
    }
}

impl Tolerances {
    /// Default thresholds with a different rank cutoff.
    pub fn with_rank(rank: f64) -> Self {
        Self {
            rank,
            ..Self::default()
        }
    }
}
