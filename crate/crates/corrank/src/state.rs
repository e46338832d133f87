//! Pure, mixed and permutation-symmetric state representations.
//!
//! Amplitude indexing follows one convention everywhere: qubit labels are
//! 1-based and qubit 1 is the most significant bit of the basis index.

use num_complex::Complex64;

use crate::bipartition::Bipartition;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Acceptable deviation from unit norm / unit trace.
pub const NORM_TOL: f64 = 1e-10;
/// Eigenvalues of a density matrix may undershoot zero by at most this much.
pub const PSD_TOL: f64 = 1e-10;

/// Bit of `label` (1-based, most significant first) in an n-qubit basis index.
pub(crate) fn qubit_bit(index: usize, label: usize, n: usize) -> usize {
    (index >> (n - label)) & 1
}

/// A normalized n-qubit state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n == 0 || amplitudes.len() != 1 << n {
            return Err(Error::BadDimension {
                n,
                got: amplitudes.len(),
            });
        }
        if let Some(bad) = amplitudes
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite(bad));
        }
        let norm = linalg::vec_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, amplitudes })
    }

    /// Normalize and wrap; rejects the zero vector.
    pub fn from_unnormalized(n: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if n == 0 || amplitudes.len() != 1 << n {
            return Err(Error::BadDimension {
                n,
                got: amplitudes.len(),
            });
        }
        let norm = linalg::vec_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self::new(n, amplitudes)
    }

    /// The computational basis state |index>.
    pub fn basis_state(n: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::ZERO; 1 << n];
        amplitudes[index] = Complex64::ONE;
        Self { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        linalg::vec_norm(&self.amplitudes)
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        linalg::dot(&self.amplitudes, &other.amplitudes)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Multiply every amplitude by a unit-modulus phase.
    pub fn phase_scaled(&self, phase: Complex64) -> Self {
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }

    /// |self><self| as a density matrix.
    pub fn projector(&self) -> MixedState {
        let dim = self.amplitudes.len();
        let matrix = CMatrix::from_fn(dim, dim, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        MixedState {
            n: self.n,
            matrix,
        }
    }

    /// Marginal density matrix on the kept qubits, computed directly from the
    /// amplitudes rather than through the full projector.
    pub fn reduce(&self, keep: &Bipartition) -> Result<MixedState> {
        if keep.n() != self.n {
            return Err(Error::BadPartition(format!(
                "cut is over {} qubits, state has {}",
                keep.n(),
                self.n
            )));
        }
        let kept = 1usize << keep.size();
        let env = 1usize << (self.n - keep.size());
        let mut matrix = CMatrix::zeros(kept, kept);
        for i in 0..kept {
            for j in 0..kept {
                let mut acc = Complex64::ZERO;
                for e in 0..env {
                    acc += self.amplitudes[keep.index_join(i, e)]
                        * self.amplitudes[keep.index_join(j, e)].conj();
                }
                matrix[(i, j)] = acc;
            }
        }
        Ok(MixedState {
            n: keep.size(),
            matrix,
        })
    }

    /// Tensor product; `self`'s qubits become labels 1..=n, `other`'s follow.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self {
            n: self.n + other.n,
            amplitudes,
        }
    }

    /// Relabel qubits: `new_label_of[q - 1]` is the new label of old qubit q.
    pub fn permute_qubits(&self, new_label_of: &[usize]) -> Result<Self> {
        check_permutation(new_label_of, self.n)?;
        let mut amplitudes = vec![Complex64::ZERO; self.amplitudes.len()];
        for (v, amp) in self.amplitudes.iter().enumerate() {
            let mut w = 0usize;
            for q in 1..=self.n {
                let b = qubit_bit(v, q, self.n);
                w |= b << (self.n - new_label_of[q - 1]);
            }
            amplitudes[w] = *amp;
        }
        Ok(Self {
            n: self.n,
            amplitudes,
        })
    }

    /// Combine factors on complementary label sets back into one register:
    /// `left` lives on the members of `cut`, `right` on the complement.
    pub fn assemble(cut: &Bipartition, left: &Self, right: &Self) -> Result<Self> {
        if left.n != cut.size() || right.n != cut.n() - cut.size() {
            return Err(Error::BadInput(format!(
                "factor sizes {}+{} do not match cut {} of {} qubits",
                left.n,
                right.n,
                cut,
                cut.n()
            )));
        }
        let n = cut.n();
        let mut amplitudes = vec![Complex64::ZERO; 1 << n];
        for (i, a) in left.amplitudes.iter().enumerate() {
            if *a == Complex64::ZERO {
                continue;
            }
            for (j, b) in right.amplitudes.iter().enumerate() {
                amplitudes[cut.index_join(i, j)] = a * b;
            }
        }
        Ok(Self { n, amplitudes })
    }

    /// Apply one invertible operator per qubit and renormalize.
    pub fn apply_local_operators(&self, ops: &[CMatrix]) -> Result<Self> {
        if ops.len() != self.n {
            return Err(Error::BadInput(format!(
                "need {} single-qubit operators, got {}",
                self.n,
                ops.len()
            )));
        }
        for op in ops {
            if op.rows() != 2 || op.cols() != 2 {
                return Err(Error::BadInput("local operators must be 2x2".into()));
            }
        }
        let mut amps = self.amplitudes.clone();
        for (q, op) in ops.iter().enumerate() {
            let shift = self.n - (q + 1);
            let stride = 1usize << shift;
            let mut next = vec![Complex64::ZERO; amps.len()];
            for (v, a) in amps.iter().enumerate() {
                if *a == Complex64::ZERO {
                    continue;
                }
                let b = (v >> shift) & 1;
                let base = v & !(stride);
                next[base] += op[(0, b)] * a;
                next[base | stride] += op[(1, b)] * a;
            }
            amps = next;
        }
        Self::from_unnormalized(self.n, amps)
    }
}

/// A density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    n: usize,
    matrix: CMatrix,
}

impl MixedState {
    pub fn new(n: usize, matrix: CMatrix) -> Result<Self> {
        let dim = 1usize << n;
        if n == 0 || matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::BadDimension {
                n,
                got: matrix.rows(),
            });
        }
        let defect = matrix.hermiticity_defect();
        if defect > linalg::HERMITIAN_TOL {
            return Err(Error::BadDensity(format!(
                "not Hermitian (deviation {defect:.3e})"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::BadDensity(format!("trace is {trace}, expected 1")));
        }
        let eig = nalgebra::SymmetricEigen::new(matrix.to_na());
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -PSD_TOL {
            return Err(Error::BadDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Convex combination of density matrices on the same register.
    pub fn mix(parts: &[(f64, MixedState)]) -> Result<Self> {
        let n = parts
            .first()
            .ok_or_else(|| Error::BadInput("empty mixture".into()))?
            .1
            .n;
        let dim = 1usize << n;
        let mut matrix = CMatrix::zeros(dim, dim);
        for (w, part) in parts {
            if part.n != n {
                return Err(Error::BadInput("mixture parts differ in size".into()));
            }
            if w.is_nan() || *w < 0.0 {
                return Err(Error::BadInput(format!("negative mixture weight {w}")));
            }
            matrix = matrix.add(&part.matrix.scale(Complex64::new(*w, 0.0)))?;
        }
        Self::new(n, matrix)
    }

    /// Tensor product; `self`'s qubits become labels 1..=n, `other`'s follow.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            n: self.n + other.n,
            matrix: linalg::tensor_product(&self.matrix, &other.matrix),
        }
    }

    /// Reduced state on the qubits of `keep` (in increasing label order).
    pub fn reduce(&self, keep: &Bipartition) -> Result<Self> {
        if keep.n() != self.n {
            return Err(Error::BadPartition(format!(
                "cut is over {} qubits, state has {}",
                keep.n(),
                self.n
            )));
        }
        let matrix = linalg::partial_trace(&self.matrix, keep)?;
        Ok(Self {
            n: keep.size(),
            matrix,
        })
    }

    /// Relabel qubits: `new_label_of[q - 1]` is the new label of old qubit q.
    pub fn permute_qubits(&self, new_label_of: &[usize]) -> Result<Self> {
        check_permutation(new_label_of, self.n)?;
        let dim = 1usize << self.n;
        let map = |v: usize| -> usize {
            let mut w = 0usize;
            for q in 1..=self.n {
                w |= qubit_bit(v, q, self.n) << (self.n - new_label_of[q - 1]);
            }
            w
        };
        let mut matrix = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            let mi = map(i);
            for j in 0..dim {
                matrix[(mi, map(j))] = self.matrix[(i, j)];
            }
        }
        Ok(Self { n: self.n, matrix })
    }

    /// Combine factors on complementary label sets back into one register.
    pub fn assemble(cut: &Bipartition, left: &Self, right: &Self) -> Result<Self> {
        if left.n != cut.size() || right.n != cut.n() - cut.size() {
            return Err(Error::BadInput(format!(
                "factor sizes {}+{} do not match cut {} of {} qubits",
                left.n,
                right.n,
                cut,
                cut.n()
            )));
        }
        let n = cut.n();
        let dim = 1usize << n;
        let mut matrix = CMatrix::zeros(dim, dim);
        for li in 0..left.matrix.rows() {
            for lj in 0..left.matrix.cols() {
                let f = left.matrix[(li, lj)];
                if f == Complex64::ZERO {
                    continue;
                }
                for ri in 0..right.matrix.rows() {
                    for rj in 0..right.matrix.cols() {
                        matrix[(cut.index_join(li, ri), cut.index_join(lj, rj))] =
                            f * right.matrix[(ri, rj)];
                    }
                }
            }
        }
        Ok(Self { n, matrix })
    }

}

/// Either kind of state; analysis entry points dispatch on this.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyState {
    Pure(PureState),
    Mixed(MixedState),
}

impl AnyState {
    pub fn n(&self) -> usize {
        match self {
            AnyState::Pure(psi) => psi.n(),
            AnyState::Mixed(rho) => rho.n(),
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, AnyState::Pure(_))
    }

    /// View as a density matrix, promoting pure states to projectors.
    pub fn to_mixed(&self) -> MixedState {
        match self {
            AnyState::Pure(psi) => psi.projector(),
            AnyState::Mixed(rho) => rho.clone(),
        }
    }
}

impl From<PureState> for AnyState {
    fn from(psi: PureState) -> Self {
        AnyState::Pure(psi)
    }
}

impl From<MixedState> for AnyState {
    fn from(rho: MixedState) -> Self {
        AnyState::Mixed(rho)
    }
}

/// A permutation-symmetric state expressed over the normalized Dicke basis:
/// coefficient `dicke_coeffs[l]` multiplies the l-excitation Dicke state.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n: usize,
    dicke_coeffs: Vec<Complex64>,
}

impl SymmetricState {
    pub fn new(n: usize, dicke_coeffs: Vec<Complex64>) -> Result<Self> {
        if n == 0 || dicke_coeffs.len() != n + 1 {
            return Err(Error::BadDimension {
                n,
                got: dicke_coeffs.len(),
            });
        }
        let norm = linalg::vec_norm(&dicke_coeffs);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, dicke_coeffs })
    }

    pub fn from_unnormalized(n: usize, mut dicke_coeffs: Vec<Complex64>) -> Result<Self> {
        if n == 0 || dicke_coeffs.len() != n + 1 {
            return Err(Error::BadDimension {
                n,
                got: dicke_coeffs.len(),
            });
        }
        let norm = linalg::vec_norm(&dicke_coeffs);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        for z in &mut dicke_coeffs {
            *z /= norm;
        }
        Self::new(n, dicke_coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dicke_coeffs(&self) -> &[Complex64] {
        &self.dicke_coeffs
    }

    /// Expand over the computational basis: every weight-l bitstring receives
    /// amplitude `dicke_coeffs[l] / sqrt(C(n, l))`.
    pub fn to_pure(&self) -> PureState {
        let n = self.n;
        let weights: Vec<Complex64> = (0..=n)
            .map(|l| self.dicke_coeffs[l] / (binomial(n, l) as f64).sqrt())
            .collect();
        let amplitudes = (0..1usize << n)
            .map(|v| weights[v.count_ones() as usize])
            .collect();
        PureState { n, amplitudes }
    }
}

/// Binomial coefficient, exact for the small n used here.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

fn check_permutation(new_label_of: &[usize], n: usize) -> Result<()> {
    if new_label_of.len() != n {
        return Err(Error::BadInput(format!(
            "permutation length {} does not match {} qubits",
            new_label_of.len(),
            n
        )));
    }
    let mut seen = vec![false; n + 1];
    for &label in new_label_of {
        if label < 1 || label > n || seen[label] {
            return Err(Error::BadInput(format!("invalid permutation target {label}")));
        }
        seen[label] = true;
    }
    Ok(())
}
