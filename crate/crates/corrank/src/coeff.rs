//! Coefficient matrices of pure states across bipartite cuts.
//!
//! For a cut with row side S, the amplitudes of an n-qubit state are reshaped
//! into a 2^|S| x 2^(n-|S|) matrix: entry (i, j) is the amplitude of the
//! basis string whose S-positions spell i (members in increasing label order,
//! first member most significant) and whose remaining positions spell j. A
//! state factors across the cut exactly when this matrix has rank 1.

use crate::bipartition::Bipartition;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::PureState;

/// The reshaped amplitude matrix of one cut.
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    source_n: usize,
    row_side: Bipartition,
    matrix: CMatrix,
}

impl CoefficientMatrix {
    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn row_side(&self) -> &Bipartition {
        &self.row_side
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn rank(&self, tol: f64) -> Result<usize> {
        linalg::numerical_rank(&self.matrix, tol)
    }
}

/// Reshape `psi` across the cut `s`.
pub fn coefficient_matrix(psi: &PureState, s: &Bipartition) -> Result<CoefficientMatrix> {
    if s.n() != psi.n() {
        return Err(Error::BadPartition(format!(
            "cut is over {} qubits, state has {}",
            s.n(),
            psi.n()
        )));
    }
    let rows = 1usize << s.size();
    let cols = 1usize << (s.n() - s.size());
    let mut matrix = CMatrix::zeros(rows, cols);
    for (v, amp) in psi.amplitudes().iter().enumerate() {
        let (i, j) = s.index_split(v);
        matrix[(i, j)] = *amp;
    }
    Ok(CoefficientMatrix {
        source_n: psi.n(),
        row_side: s.clone(),
        matrix,
    })
}

/// Numerical rank of the coefficient matrix across the cut `s`.
pub fn cut_rank(psi: &PureState, s: &Bipartition, tol: f64) -> Result<usize> {
    coefficient_matrix(psi, s)?.rank(tol)
}
