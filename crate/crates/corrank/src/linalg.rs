//! Dense complex linear algebra sized for small multi-qubit systems.
//!
//! Everything here is written against [`CMatrix`], a row-major dense complex
//! matrix. Singular value and Hermitian eigendecompositions are delegated to
//! `nalgebra`; the rank-revealing column selection and the qubit-indexed
//! operations (Kronecker product, partial trace) are implemented directly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bipartition::Bipartition;
use crate::error::{Error, Result};

/// Relative singular-value cutoff used for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Eigenvalues at or below `zero_tol * trace` are dropped from spectral output.
pub const DEFAULT_EIGEN_ZERO_TOL: f64 = 1e-12;
/// Elementwise bound for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    /// Build from row-major entries, rejecting NaN/Inf and length mismatches.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if let Some(bad) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite(bad));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Column vector from amplitudes.
    pub fn column(entries: Vec<Complex64>) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn col_vec(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::EntryCount {
                rows: self.rows,
                cols: self.cols,
                len: other.entries.len(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::BadDimension {
                n: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Largest elementwise |self - other|; matrices must share a shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max elementwise deviation from the conjugate transpose.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub(crate) fn to_na(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_iterator(self.rows, self.cols, self.entries.iter().copied())
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Eigenpairs of a Hermitian matrix above the zero cutoff.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Eigenvalues sorted descending.
    pub eigenvalues: Vec<f64>,
    /// One orthonormal column per retained eigenvalue.
    pub eigenvectors: CMatrix,
}

impl EigenSystem {
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Rebuild the represented operator as sum of eigenvalue * projector.
    pub fn reconstruct(&self) -> CMatrix {
        let dim = self.eigenvectors.rows();
        let mut out = CMatrix::zeros(dim, dim);
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..dim {
                let vi = self.eigenvectors[(i, k)];
                for j in 0..dim {
                    out[(i, j)] += lambda * vi * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// A singular value decomposition `m = U diag(sigma) V^H`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Singular values sorted descending; length min(rows, cols).
    pub singular_values: Vec<f64>,
    /// Left singular vectors as columns (zero columns for zero values).
    pub u: Option<CMatrix>,
    /// Right singular vectors as columns, not transposed.
    pub v: Option<CMatrix>,
}

const JACOBI_ORTHO_EPS: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 64;

/// One-sided Jacobi singular value decomposition.
///
/// Plane rotations orthogonalize the matrix columns pairwise until every pair
/// meets a relative orthogonality bound; column norms are then the singular
/// values. The method resolves tiny singular values of exactly rank-deficient
/// matrices down to roundoff, which the rank thresholds here depend on.
pub fn svd(m: &CMatrix, want_u: bool, want_v: bool) -> Result<Svd> {
    if let Some(bad) = m
        .entries
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite(bad));
    }
    if m.rows < m.cols {
        // A^H = V Sigma U^H: decompose the adjoint and swap the factors
        let flipped = svd(&m.conjugate_transpose(), want_v, want_u)?;
        return Ok(Svd {
            singular_values: flipped.singular_values,
            u: flipped.v,
            v: flipped.u,
        });
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut work: Vec<Vec<Complex64>> = (0..cols).map(|j| m.col_vec(j)).collect();
    let mut right: Option<Vec<Vec<Complex64>>> = want_v.then(|| {
        (0..cols)
            .map(|j| {
                let mut e = vec![Complex64::ZERO; cols];
                e[j] = Complex64::ONE;
                e
            })
            .collect()
    });

    // column norms are refreshed each sweep and tracked through rotations
    let mut norms_sq: Vec<f64> = vec![0.0; cols];
    for _ in 0..JACOBI_MAX_SWEEPS {
        for (n, col) in norms_sq.iter_mut().zip(&work) {
            *n = col.iter().map(|z| z.norm_sqr()).sum();
        }
        // couplings below this absolute floor sit at the noise level of the
        // whole matrix and cannot move any resolvable singular value
        let floor = JACOBI_ORTHO_EPS * norms_sq.iter().sum::<f64>();
        let mut converged = true;
        for p in 0..cols {
            for q in p + 1..cols {
                let (app, aqq) = (norms_sq[p], norms_sq[q]);
                let g = dot(&work[p], &work[q]);
                if g.norm() <= JACOBI_ORTHO_EPS * (app * aqq).sqrt().max(floor) {
                    continue;
                }
                converged = false;
                // rotate column q by the phase of <p|q> so the pair reduces
                // to a real 2x2 Jacobi problem, then zero the coupling
                let phase = (g / g.norm()).conj();
                let tau = (aqq - app) / (2.0 * g.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let rotate = |col_p: &mut [Complex64], col_q: &mut [Complex64]| {
                    for (zp, zq) in col_p.iter_mut().zip(col_q.iter_mut()) {
                        let dp = *zp;
                        let dq = *zq * phase;
                        *zp = c * dp - s * dq;
                        *zq = s * dp + c * dq;
                    }
                };
                let (head, tail) = work.split_at_mut(q);
                rotate(&mut head[p], &mut tail[0]);
                if let Some(right) = &mut right {
                    let (head, tail) = right.split_at_mut(q);
                    rotate(&mut head[p], &mut tail[0]);
                }
                let cross = 2.0 * c * s * g.norm();
                norms_sq[p] = (c * c * app + s * s * aqq - cross).max(0.0);
                norms_sq[q] = s * s * app + c * c * aqq + cross;
            }
        }
        if converged {
            break;
        }
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = work.iter().map(|col| vec_norm(col)).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());

    let singular_values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let u = want_u.then(|| {
        let mut u = CMatrix::zeros(rows, cols);
        for (slot, &k) in order.iter().enumerate() {
            if norms[k] > 0.0 {
                for i in 0..rows {
                    u[(i, slot)] = work[k][i] / norms[k];
                }
            }
        }
        u
    });
    let v = right.map(|right| {
        let mut v = CMatrix::zeros(cols, cols);
        for (slot, &k) in order.iter().enumerate() {
            for i in 0..cols {
                v[(i, slot)] = right[k][i];
            }
        }
        v
    });
    Ok(Svd {
        singular_values,
        u,
        v,
    })
}

/// Singular values of a complex matrix, sorted descending.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd(m, false, false)?.singular_values)
}

/// Count of singular values above `tol * sigma_max`; the zero matrix has rank 0.
pub fn numerical_rank(m: &CMatrix, tol: f64) -> Result<usize> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::BadTolerance(tol));
    }
    let sv = singular_values(m)?;
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * sigma_max).count())
}

/// Eigendecomposition of a Hermitian matrix, dropping eigenvalues at or below
/// `zero_tol * trace`. The number of retained pairs is the rank used downstream.
pub fn hermitian_eigensystem(m: &CMatrix, zero_tol: f64) -> Result<EigenSystem> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_dev: defect });
    }
    let dim = m.rows();
    let eig = nalgebra::SymmetricEigen::new(m.to_na());
    let cutoff = zero_tol * m.trace().re;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let kept: Vec<usize> = order
        .into_iter()
        .filter(|&k| eig.eigenvalues[k] > cutoff)
        .collect();

    let eigenvalues: Vec<f64> = kept.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut eigenvectors = CMatrix::zeros(dim, kept.len());
    for (col, &k) in kept.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        // fix the arbitrary eigenvector phase: largest component real positive
        let lead = (0..dim)
            .max_by(|&a, &b| v[a].norm().partial_cmp(&v[b].norm()).unwrap())
            .unwrap();
        let phase = if v[lead].norm() > 0.0 {
            v[lead].conj() / v[lead].norm()
        } else {
            Complex64::ONE
        };
        for i in 0..dim {
            eigenvectors[(i, col)] = v[i] * phase;
        }
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Kronecker product; column vectors are 1-column matrices.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            let f = a[(i1, j1)];
            if f == Complex64::ZERO {
                continue;
            }
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    out[(i1 * b.rows + i2, j1 * b.cols + j2)] = f * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Trace out every qubit not in `keep`, returning the reduced operator on the
/// kept qubits (in increasing label order).
pub fn partial_trace(rho: &CMatrix, keep: &Bipartition) -> Result<CMatrix> {
    let n = keep.n();
    let dim = 1usize << n;
    if rho.rows != dim || rho.cols != dim {
        return Err(Error::BadDimension { n, got: rho.rows });
    }
    let kept = 1usize << keep.size();
    let env = 1usize << (n - keep.size());
    let mut out = CMatrix::zeros(kept, kept);
    for i in 0..kept {
        for j in 0..kept {
            let mut acc = Complex64::ZERO;
            for e in 0..env {
                acc += rho[(keep.index_join(i, e), keep.index_join(j, e))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// A rank-revealing column basis: pivot columns plus the expansion of every
/// remaining column over them.
#[derive(Debug, Clone)]
pub struct ColumnBasis {
    /// Indices of the selected basis columns (leftmost independent first).
    pub pivots: Vec<usize>,
    /// `(column index, coefficients over pivots)` for every non-pivot column.
    pub combinations: Vec<(usize, Vec<Complex64>)>,
}

/// Select `numerical_rank(m, tol)` basis columns by leftmost-first elimination
/// and express every other column over them.
///
/// When the input is within `tol * sigma_max` of a rank-k matrix, each
/// reconstructed column has residual bounded by that same threshold.
pub fn independent_columns(m: &CMatrix, tol: f64) -> Result<ColumnBasis> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::BadTolerance(tol));
    }
    let sv = singular_values(m)?;
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let k = sv.iter().filter(|&&s| s > tol * sigma_max).count();
    let threshold = tol * sigma_max;

    let columns: Vec<Vec<Complex64>> = (0..m.cols).map(|j| m.col_vec(j)).collect();

    // Leftmost-first selection: accept a column whenever its residual against
    // the basis so far exceeds the threshold, stopping at k pivots.
    let mut pivots: Vec<usize> = Vec::with_capacity(k);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    for (j, col) in columns.iter().enumerate() {
        if pivots.len() == k {
            break;
        }
        let mut resid = col.clone();
        for q in &basis {
            let c = dot(q, &resid);
            axpy(&mut resid, q, -c);
        }
        let norm = vec_norm(&resid);
        if norm > threshold {
            for z in &mut resid {
                *z /= norm;
            }
            basis.push(resid);
            pivots.push(j);
        }
    }
    // Fallback for the rare case where the threshold scan stalls below k:
    // complete greedily by largest residual so the basis always has k members.
    while pivots.len() < k {
        let mut best: Option<(usize, f64)> = None;
        for (j, col) in columns.iter().enumerate() {
            if pivots.contains(&j) {
                continue;
            }
            let mut resid = col.clone();
            for q in &basis {
                let c = dot(q, &resid);
                axpy(&mut resid, q, -c);
            }
            let norm = vec_norm(&resid);
            if best.is_none_or(|(_, n)| norm > n) {
                best = Some((j, norm));
            }
        }
        let (j, _) = best.expect("rank cannot exceed column count");
        let pos = pivots.iter().position(|&p| p > j).unwrap_or(pivots.len());
        pivots.insert(pos, j);
        basis = orthonormalize(&pivots, &columns);
    }

    // Upper-triangular factor of the pivot columns over the orthonormal basis.
    let mut rmat = vec![vec![Complex64::ZERO; k]; k];
    for (t, &p) in pivots.iter().enumerate() {
        for (u, q) in basis.iter().enumerate().take(t + 1) {
            rmat[u][t] = dot(q, &columns[p]);
        }
    }

    let mut combinations = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if pivots.contains(&j) {
            continue;
        }
        let y: Vec<Complex64> = basis.iter().map(|q| dot(q, col)).collect();
        combinations.push((j, back_substitute(&rmat, &y)));
    }
    Ok(ColumnBasis {
        pivots,
        combinations,
    })
}

fn orthonormalize(pivots: &[usize], columns: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(pivots.len());
    for &p in pivots {
        let mut resid = columns[p].clone();
        for q in &basis {
            let c = dot(q, &resid);
            axpy(&mut resid, q, -c);
        }
        let norm = vec_norm(&resid);
        if norm > 0.0 {
            for z in &mut resid {
                *z /= norm;
            }
        }
        basis.push(resid);
    }
    basis
}

/// Solve R t = y for upper-triangular R (k x k).
fn back_substitute(rmat: &[Vec<Complex64>], y: &[Complex64]) -> Vec<Complex64> {
    let k = y.len();
    let mut t = vec![Complex64::ZERO; k];
    for s in (0..k).rev() {
        let mut acc = y[s];
        for later in s + 1..k {
            acc -= rmat[s][later] * t[later];
        }
        t[s] = if rmat[s][s].norm() > 0.0 {
            acc / rmat[s][s]
        } else {
            Complex64::ZERO
        };
    }
    t
}

pub(crate) fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn axpy(target: &mut [Complex64], source: &[Complex64], factor: Complex64) {
    for (t, s) in target.iter_mut().zip(source) {
        *t += factor * s;
    }
}

pub(crate) fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn singular_values_identity() {
        let sv = singular_values(&CMatrix::identity(2)).unwrap();
        assert_eq!(sv.len(), 2);
        assert!((sv[0] - 1.0).abs() < 1e-12 && (sv[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_rank_one_bell_grid() {
        // (1/2) * outer(u, u) with u = (1,0,0,1): one singular value |u|^2/2 = 1
        let mut m = CMatrix::zeros(4, 4);
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = re(0.5);
        }
        let sv = singular_values(&m).unwrap();
        assert!((sv[0] - 1.0).abs() < 1e-12);
        for &s in &sv[1..] {
            assert!(s.abs() < 1e-12);
        }
        assert_eq!(numerical_rank(&m, DEFAULT_RANK_TOL).unwrap(), 1);
    }

    #[test]
    fn singular_values_zero_matrix() {
        let sv = singular_values(&CMatrix::zeros(3, 5)).unwrap();
        assert_eq!(sv, vec![0.0, 0.0, 0.0]);
        assert_eq!(numerical_rank(&CMatrix::zeros(3, 5), 1e-10).unwrap(), 0);
    }

    #[test]
    fn singular_values_match_frobenius_norm() {
        let m = CMatrix::new(
            2,
            3,
            vec![
                c(1.0, 2.0),
                c(0.0, -1.0),
                c(3.0, 0.5),
                c(-2.0, 0.0),
                c(0.25, 0.25),
                c(1.0, -1.0),
            ],
        )
        .unwrap();
        let sv = singular_values(&m).unwrap();
        let sum_sq: f64 = sv.iter().map(|s| s * s).sum();
        let frob_sq = m.frobenius_norm().powi(2);
        assert!((sum_sq - frob_sq).abs() <= 1e-12 * frob_sq);
    }

    #[test]
    fn rank_of_ghz_cut_matrix() {
        let h = 0.5f64.sqrt();
        let m = CMatrix::new(
            2,
            4,
            vec![
                re(h),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(h),
            ],
        )
        .unwrap();
        assert_eq!(numerical_rank(&m, DEFAULT_RANK_TOL).unwrap(), 2);
        assert_eq!(numerical_rank(&CMatrix::identity(4), 1e-10).unwrap(), 4);
    }

    #[test]
    fn rank_rejects_bad_tolerance() {
        assert!(numerical_rank(&CMatrix::identity(2), 0.0).is_err());
        assert!(numerical_rank(&CMatrix::identity(2), -1.0).is_err());
    }

    #[test]
    fn non_finite_entries_rejected() {
        assert!(CMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = c(f64::INFINITY, 0.0);
        assert!(singular_values(&m).is_err());
    }

    #[test]
    fn eigensystem_maximally_mixed_qubit() {
        let m = CMatrix::identity(2).scale(re(0.5));
        let eig = hermitian_eigensystem(&m, DEFAULT_EIGEN_ZERO_TOL).unwrap();
        assert_eq!(eig.eigenvalues.len(), 2);
        assert!((eig.eigenvalues[0] - 0.5).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn eigensystem_pure_projector() {
        let h = 0.5f64.sqrt();
        let v = [re(h), c(0.0, h)];
        let m = CMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj());
        let eig = hermitian_eigensystem(&m, DEFAULT_EIGEN_ZERO_TOL).unwrap();
        assert_eq!(eig.rank(), 1);
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn eigensystem_rejects_non_hermitian() {
        let m = CMatrix::new(2, 2, vec![re(1.0), re(1.0), re(0.0), re(1.0)]).unwrap();
        assert!(matches!(
            hermitian_eigensystem(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn tensor_product_identities_and_kets() {
        let id2 = CMatrix::identity(2);
        assert_eq!(tensor_product(&id2, &id2), CMatrix::identity(4));
        let zero = CMatrix::column(vec![re(1.0), re(0.0)]);
        let one = CMatrix::column(vec![re(0.0), re(1.0)]);
        let ket01 = tensor_product(&zero, &one);
        // |0> kron |1> = |01>, index 1 under the qubit-1-most-significant layout
        assert_eq!(ket01.entries(), &[re(0.0), re(1.0), re(0.0), re(0.0)]);
    }

    #[test]
    fn partial_trace_basics() {
        // |00><00| reduced onto qubit 1 is |0><0|
        let mut proj = CMatrix::zeros(4, 4);
        proj[(0, 0)] = re(1.0);
        let keep = Bipartition::new(2, [1]).unwrap();
        let red = partial_trace(&proj, &keep).unwrap();
        let mut expect = CMatrix::zeros(2, 2);
        expect[(0, 0)] = re(1.0);
        assert!(red.max_abs_diff(&expect) < 1e-15);

        // Bell projector marginal is maximally mixed
        let h = 0.5f64.sqrt();
        let bell = [re(h), re(0.0), re(0.0), re(h)];
        let proj = CMatrix::from_fn(4, 4, |i, j| bell[i] * bell[j].conj());
        let red = partial_trace(&proj, &keep).unwrap();
        assert!(red.max_abs_diff(&CMatrix::identity(2).scale(re(0.5))) < 1e-12);
        assert!((red.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_dimension_check() {
        let keep = Bipartition::new(3, [1]).unwrap();
        assert!(partial_trace(&CMatrix::identity(4), &keep).is_err());
    }

    #[test]
    fn independent_columns_identity() {
        let basis = independent_columns(&CMatrix::identity(3), 1e-10).unwrap();
        assert_eq!(basis.pivots, vec![0, 1, 2]);
        assert!(basis.combinations.is_empty());
    }

    #[test]
    fn independent_columns_proportional() {
        let m = CMatrix::new(2, 2, vec![re(1.0), re(2.0), re(2.0), re(4.0)]).unwrap();
        let basis = independent_columns(&m, 1e-10).unwrap();
        assert_eq!(basis.pivots, vec![0]);
        assert_eq!(basis.combinations.len(), 1);
        let (j, t) = &basis.combinations[0];
        assert_eq!(*j, 1);
        assert_eq!(t.len(), 1);
        assert!((t[0] - re(2.0)).norm() < 1e-12);
    }

    #[test]
    fn independent_columns_w_state_cut() {
        let s = (1.0f64 / 3.0).sqrt();
        let m = CMatrix::new(
            2,
            4,
            vec![
                re(0.0),
                re(s),
                re(s),
                re(0.0),
                re(s),
                re(0.0),
                re(0.0),
                re(0.0),
            ],
        )
        .unwrap();
        let basis = independent_columns(&m, 1e-10).unwrap();
        assert_eq!(basis.pivots, vec![0, 1]);
        for (j, t) in &basis.combinations {
            let mut rebuilt = vec![Complex64::ZERO; 2];
            for (slot, &p) in basis.pivots.iter().enumerate() {
                axpy(&mut rebuilt, &m.col_vec(p), t[slot]);
            }
            let col = m.col_vec(*j);
            let err: f64 = rebuilt
                .iter()
                .zip(&col)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err < 1e-12, "column {j} residual {err}");
        }
    }

    #[test]
    fn jacobi_svd_handles_near_rank_one_complex_matrix() {
        // regression: a lightly perturbed rank-1 complex 2x2 on which a
        // bidiagonalization-based solver returned sigma_1 = 1.005 for a
        // unit-Frobenius matrix and a non-singular-vector U
        let m = CMatrix::new(
            2,
            2,
            vec![
                c(0.23809523809523742, 0.0),
                c(0.3809523809523809, -0.19047619047619077),
                c(0.3809523809523809, -0.19047619047619077),
                c(0.4571428571428567, -0.6095238095238099),
            ],
        )
        .unwrap();
        let out = svd(&m, true, true).unwrap();
        let sum_sq: f64 = out.singular_values.iter().map(|s| s * s).sum();
        assert!((sum_sq - m.frobenius_norm().powi(2)).abs() < 1e-14);
        assert!(out.singular_values[1] < 1e-14);
        // leading left vector must actually be a singular vector
        let u = out.u.unwrap();
        let lead: Vec<Complex64> = (0..2).map(|i| u[(i, 0)]).collect();
        let expect = [c(0.48795003647426644, 0.0), c(0.7807200583588267, -0.39036002917941337)];
        let overlap: Complex64 = lead.iter().zip(&expect).map(|(a, b)| a.conj() * b).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_svd_reconstructs_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(404);
        for trial in 0..60 {
            let rows = 1 + rng.random_range(0..6usize);
            let cols = 1 + rng.random_range(0..6usize);
            let m = CMatrix::from_fn(rows, cols, |_, _| {
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let out = svd(&m, true, true).unwrap();
            let u = out.u.as_ref().unwrap();
            let v = out.v.as_ref().unwrap();
            let mut err = 0.0f64;
            for i in 0..rows {
                for j in 0..cols {
                    let mut acc = Complex64::ZERO;
                    for (k, s) in out.singular_values.iter().enumerate() {
                        acc += *s * u[(i, k)] * v[(j, k)].conj();
                    }
                    err = err.max((acc - m[(i, j)]).norm());
                }
            }
            assert!(err < 1e-12, "trial {trial}: reconstruction error {err}");
            // descending order and V orthonormality
            for pair in out.singular_values.windows(2) {
                assert!(pair[0] >= pair[1]);
            }
            for k1 in 0..cols.min(rows) {
                for k2 in 0..cols.min(rows) {
                    let d: Complex64 = (0..v.rows()).map(|i| v[(i, k1)].conj() * v[(i, k2)]).sum();
                    let expect = if k1 == k2 { 1.0 } else { 0.0 };
                    assert!((d.norm() - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn eigensystem_random_psd_reconstruction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(405);
        for trial in 0..40 {
            let dim = 2 + rng.random_range(0..7usize);
            let rank = 1 + rng.random_range(0..dim);
            let g = CMatrix::from_fn(dim, rank, |_, _| {
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let h = g.matmul(&g.conjugate_transpose()).unwrap();
            let eig = hermitian_eigensystem(&h, 1e-14).unwrap();
            assert!(
                eig.reconstruct().frobenius_distance(&h) < 1e-9 * h.frobenius_norm().max(1.0),
                "trial {trial}"
            );
            // orthonormal eigenvector columns
            let vecs = &eig.eigenvectors;
            for k1 in 0..eig.rank() {
                for k2 in 0..eig.rank() {
                    let d: Complex64 = (0..dim).map(|i| vecs[(i, k1)].conj() * vecs[(i, k2)]).sum();
                    let expect = if k1 == k2 { 1.0 } else { 0.0 };
                    assert!((d.norm() - expect).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn independent_columns_zero_matrix() {
        let basis = independent_columns(&CMatrix::zeros(3, 2), 1e-10).unwrap();
        assert!(basis.pivots.is_empty());
        assert_eq!(basis.combinations.len(), 2);
        for (_, t) in &basis.combinations {
            assert!(t.is_empty());
        }
    }
}
