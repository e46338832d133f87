//! Crate-wide error type.

use thiserror::Error;

use crate::bipartition::Bipartition;

/// Everything that can go wrong across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite matrix entry at flat index {0}")]
    NonFinite(usize),

    #[error("entry count {len} does not match a {rows}x{cols} matrix")]
    EntryCount { rows: usize, cols: usize, len: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max elementwise deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },

    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),

    #[error("dimension {got} does not match 2^{n}")]
    BadDimension { n: usize, got: usize },

    #[error("invalid bipartition: {0}")]
    BadPartition(String),

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("not a valid density matrix: {0}")]
    BadDensity(String),

    #[error("invalid input: {0}")]
    BadInput(String),

    #[error("no product structure across the requested cut (residual {residual:.3e})")]
    NotAProduct { residual: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("capacity exceeded: {what} is {got}, limit {limit}{hint}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error(
        "detection methods disagree: theorem-3 verdict genuine={theorem3_genuine}, \
         oracle verdict genuine={oracle_genuine} (theorem-3 witness {theorem3_witness:?}, \
         oracle witness {oracle_witness:?})"
    )]
    MethodDisagreement {
        theorem3_genuine: bool,
        theorem3_witness: Option<Bipartition>,
        oracle_genuine: bool,
        oracle_witness: Option<Bipartition>,
    },

    #[error("schema error: {0}")]
    Schema(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
