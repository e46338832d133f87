//! Pure-state analysis: genuine-correlation detection, factorization into
//! genuinely correlated components, degree of correlations, sum-of-products
//! decomposition across a cut, and a coefficient-space fast path for
//! permutation-symmetric states.

use num_complex::Complex64;

use crate::bipartition::Bipartition;
use crate::coeff::{coefficient_matrix, cut_rank};
use crate::error::{Error, Result};
use crate::linalg;
use crate::state::{binomial, PureState, SymmetricState};

/// Direction in which the canonical cuts are scanned. The factorization
/// outcome must not depend on this; tests exercise both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetOrder {
    Forward,
    Reverse,
}

/// One factor of a product decomposition, on the original qubit labels.
#[derive(Debug, Clone)]
pub struct PureFactor {
    /// Sorted original labels this factor lives on.
    pub qubits: Vec<usize>,
    /// The factor state, qubits in increasing label order.
    pub state: PureState,
}

/// A complete decomposition into genuinely correlated components.
///
/// The factor label sets partition {1..n}; reassembling the factors in label
/// order and multiplying by `global_phase` reproduces the input state. Every
/// factor on 2 or more qubits is genuinely correlated.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<PureFactor>,
    pub global_phase: Complex64,
}

impl Factorization {
    /// Largest factor size; the degree of correlations of the input.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.qubits.len()).max().unwrap_or(1)
    }

    /// Sorted multiset of factor label sets.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self.factors.iter().map(|f| f.qubits.clone()).collect();
        sets.sort();
        sets
    }

    /// Reassemble the factors (in label order) times the global phase.
    pub fn reconstruct(&self) -> Result<PureState> {
        let mut parts = self.factors.clone();
        parts.sort_by_key(|f| f.qubits[0]);
        let mut acc = parts
            .first()
            .ok_or_else(|| Error::BadInput("empty factorization".into()))?
            .clone();
        for part in &parts[1..] {
            let mut union = acc.qubits.clone();
            union.extend(&part.qubits);
            union.sort_unstable();
            let positions: Vec<usize> = acc
                .qubits
                .iter()
                .map(|q| union.binary_search(q).unwrap() + 1)
                .collect();
            let cut = Bipartition::new(union.len(), positions)?;
            acc = PureFactor {
                state: PureState::assemble(&cut, &acc.state, &part.state)?,
                qubits: union,
            };
        }
        Ok(acc.state.phase_scaled(self.global_phase))
    }
}

/// A sum-of-products expansion across one cut: the state equals the sum of
/// `left (x) right` over all terms, and no expansion with fewer terms exists.
#[derive(Debug, Clone)]
pub struct ProductTermSum {
    pub cut: Bipartition,
    pub terms: Vec<ProductTerm>,
}

/// One unnormalized bipartite product term.
#[derive(Debug, Clone)]
pub struct ProductTerm {
    /// Amplitudes on the cut's row side.
    pub left: Vec<Complex64>,
    /// Amplitudes on the complement.
    pub right: Vec<Complex64>,
}

impl ProductTermSum {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Sum the product terms back into a full amplitude vector.
    pub fn reconstruct_amplitudes(&self) -> Vec<Complex64> {
        let n = self.cut.n();
        let mut amps = vec![Complex64::ZERO; 1 << n];
        for term in &self.terms {
            for (i, l) in term.left.iter().enumerate() {
                if *l == Complex64::ZERO {
                    continue;
                }
                for (j, r) in term.right.iter().enumerate() {
                    amps[self.cut.index_join(i, j)] += l * r;
                }
            }
        }
        amps
    }
}

/// Verdict of the symmetric-state classifier.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricClass {
    Genuine,
    /// The state is (alpha|0> + |1>)^(x)n up to normalization and phase.
    Product(Complex64),
    /// |0...0> up to phase.
    TrivialDicke0,
    /// |1...1> up to phase.
    TrivialDickeN,
}

/// Genuine n-partite correlation test for pure states: genuine exactly when
/// every canonical cut has coefficient-matrix rank at least 2. Returns the
/// first rank-1 cut as witness otherwise. Single qubits are never genuine.
pub fn is_genuine_pure(psi: &PureState, tol: f64) -> Result<(bool, Option<Bipartition>)> {
    if psi.n() < 2 {
        return Ok((false, None));
    }
    for s in Bipartition::canonical_cuts(psi.n()) {
        if cut_rank(psi, &s, tol)? == 1 {
            return Ok((false, Some(s)));
        }
    }
    Ok((true, None))
}

/// Split a state across a rank-1 cut into unit-norm factors.
///
/// Factor phases are canonical (first significant amplitude real positive);
/// the returned phase satisfies `psi = phase * assemble(cut, left, right)`.
/// Fails with [`Error::NotAProduct`] when the cut rank exceeds 1, judged by
/// the relative second singular value against `tol`.
pub fn factor_across(
    psi: &PureState,
    s: &Bipartition,
    tol: f64,
) -> Result<(PureState, PureState, Complex64)> {
    let cm = coefficient_matrix(psi, s)?;
    let svd = linalg::svd(cm.matrix(), true, true)?;
    let sv = &svd.singular_values;
    let sigma1 = sv[0];
    let residual = sv.get(1).copied().unwrap_or(0.0) / sigma1;
    if residual > tol {
        return Err(Error::NotAProduct { residual });
    }

    // the coefficient matrix factors as sigma * u conj(v)^T across the cut
    let u = svd.u.as_ref().expect("requested U");
    let v = svd.v.as_ref().expect("requested V");
    let left_raw: Vec<Complex64> = (0..u.rows()).map(|i| u[(i, 0)]).collect();
    let right_raw: Vec<Complex64> = (0..v.rows()).map(|j| v[(j, 0)].conj()).collect();

    let (left, phase_l) = canonical_phase(left_raw, tol);
    let (right, phase_r) = canonical_phase(right_raw, tol);
    let left = PureState::from_unnormalized(s.size(), left)?;
    let right = PureState::from_unnormalized(s.n() - s.size(), right)?;

    // align the residual global phase against the input so that
    // psi ~ phase * (left (x) right)
    let product = PureState::assemble(s, &left, &right)?;
    let overlap = product.inner(psi);
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        phase_l * phase_r
    };
    Ok((left, right, phase))
}

fn canonical_phase(mut amps: Vec<Complex64>, tol: f64) -> (Vec<Complex64>, Complex64) {
    let max = amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let anchor = amps
        .iter()
        .find(|a| a.norm() > tol * max)
        .copied()
        .unwrap_or(Complex64::ONE);
    let phase = anchor / anchor.norm();
    let inv = phase.conj();
    for a in &mut amps {
        *a *= inv;
    }
    (amps, phase)
}

/// Decompose a pure state into genuinely correlated components by recursively
/// splitting on the first rank-1 canonical cut.
pub fn factorize(psi: &PureState, tol: f64) -> Result<Factorization> {
    factorize_ordered(psi, tol, SubsetOrder::Forward)
}

/// [`factorize`] with an explicit cut-scan direction; the resulting multiset
/// of factor subsets is the same either way.
pub fn factorize_ordered(
    psi: &PureState,
    tol: f64,
    order: SubsetOrder,
) -> Result<Factorization> {
    let n = psi.n();
    let mut phase = Complex64::ONE;
    let mut work: Vec<PureFactor> = vec![PureFactor {
        qubits: (1..=n).collect(),
        state: psi.clone(),
    }];
    let mut factors: Vec<PureFactor> = Vec::new();

    while let Some(part) = work.pop() {
        let m = part.qubits.len();
        let split = if m == 1 {
            None
        } else {
            let mut cuts = Bipartition::canonical_cuts(m);
            if order == SubsetOrder::Reverse {
                cuts.reverse();
            }
            let mut hit = None;
            for s in cuts {
                if cut_rank(&part.state, &s, tol)? == 1 {
                    hit = Some(s);
                    break;
                }
            }
            hit
        };
        match split {
            Some(s) => {
                let (left, right, ph) = factor_across(&part.state, &s, tol)?;
                phase *= ph;
                let left_labels: Vec<usize> =
                    s.members().iter().map(|&q| part.qubits[q - 1]).collect();
                let right_labels: Vec<usize> = s
                    .complement()
                    .members()
                    .iter()
                    .map(|&q| part.qubits[q - 1])
                    .collect();
                work.push(PureFactor {
                    qubits: left_labels,
                    state: left,
                });
                work.push(PureFactor {
                    qubits: right_labels,
                    state: right,
                });
            }
            None => {
                let (amps, ph) = canonical_phase(part.state.amplitudes().to_vec(), tol);
                phase *= ph;
                factors.push(PureFactor {
                    qubits: part.qubits,
                    state: PureState::new(m, amps)?,
                });
            }
        }
    }
    factors.sort_by_key(|f| f.qubits[0]);
    Ok(Factorization {
        factors,
        global_phase: phase,
    })
}

/// Degree of correlations of a pure state: the largest factor size of its
/// decomposition into genuinely correlated components.
pub fn degree_pure(psi: &PureState, tol: f64) -> Result<usize> {
    Ok(factorize(psi, tol)?.degree())
}

/// Expand a pure state as a minimal sum of bipartite product terms across the
/// cut `s`: exactly `cut_rank` terms, built from a column basis of the
/// coefficient matrix. Term j pairs pivot column p_j with the unit column
/// vector |p_j> plus the expansion coefficients of every dependent column.
pub fn sum_of_products(psi: &PureState, s: &Bipartition, tol: f64) -> Result<ProductTermSum> {
    let cm = coefficient_matrix(psi, s)?;
    let basis = linalg::independent_columns(cm.matrix(), tol)?;
    let cols = cm.matrix().cols();
    let terms = basis
        .pivots
        .iter()
        .enumerate()
        .map(|(slot, &p)| {
            let left = cm.matrix().col_vec(p);
            let mut right = vec![Complex64::ZERO; cols];
            right[p] = Complex64::ONE;
            for (j, t) in &basis.combinations {
                right[*j] = t[slot];
            }
            ProductTerm { left, right }
        })
        .collect();
    Ok(ProductTermSum {
        cut: s.clone(),
        terms,
    })
}

/// Classify a permutation-symmetric state from its Dicke coefficients alone.
///
/// With c_l the per-string weight amplitudes (Dicke coefficient over the
/// square root of the binomial count), the state is a product exactly when
/// the c_l form a geometric progression with every term nonzero; the ratio
/// alpha then identifies the single-qubit factor alpha|0> + |1>. Isolated or
/// mismatched weights mean genuine correlations; the all-zero and all-one
/// Dicke states are their own trivial classes.
pub fn classify_symmetric(s: &SymmetricState, tol: f64) -> Result<SymmetricClass> {
    let n = s.n();
    if n < 2 {
        return Err(Error::BadInput(
            "symmetric classification needs at least 2 qubits".into(),
        ));
    }
    let weights: Vec<Complex64> = s
        .dicke_coeffs()
        .iter()
        .enumerate()
        .map(|(l, a)| a / (binomial(n, l) as f64).sqrt())
        .collect();
    let max = weights.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let threshold = tol * max;
    let support: Vec<usize> = (0..=n)
        .filter(|&l| weights[l].norm() > threshold)
        .collect();
    if support == [0] {
        return Ok(SymmetricClass::TrivialDicke0);
    }
    if support == [n] {
        return Ok(SymmetricClass::TrivialDickeN);
    }

    // strongest adjacent pair anchors the candidate progression ratio
    let (anchor, anchor_min) = (0..n)
        .map(|l| (l, weights[l].norm().min(weights[l + 1].norm())))
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    if anchor_min <= threshold {
        // only isolated weights: a Dicke state or a sparse superposition
        return Ok(SymmetricClass::Genuine);
    }
    let alpha = weights[anchor] / weights[anchor + 1];

    // compare against the exact product state with that ratio
    let mut candidate: Vec<Complex64> = Vec::with_capacity(n + 1);
    let mut pow = Complex64::ONE;
    for _ in 0..=n {
        candidate.push(pow);
        pow *= alpha;
    }
    candidate.reverse(); // candidate[l] = alpha^(n-l)
    let norm = candidate
        .iter()
        .enumerate()
        .map(|(l, c)| binomial(n, l) as f64 * c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let fidelity = candidate
        .iter()
        .zip(&weights)
        .enumerate()
        .map(|(l, (c, w))| binomial(n, l) as f64 * (c / norm).conj() * w)
        .sum::<Complex64>()
        .norm();
    if 1.0 - fidelity <= 1e3 * tol {
        Ok(SymmetricClass::Product(alpha))
    } else {
        Ok(SymmetricClass::Genuine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dicke, ghz, random_product, random_pure, swapping_state, w};
    use crate::linalg::DEFAULT_RANK_TOL as TOL;
    use crate::state::MixedState;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn ghz_is_genuine() {
        let (genuine, witness) = is_genuine_pure(&ghz(4).unwrap(), TOL).unwrap();
        assert!(genuine);
        assert!(witness.is_none());
    }

    #[test]
    fn swapping_state_witness_is_ac() {
        let (genuine, witness) = is_genuine_pure(&swapping_state(), TOL).unwrap();
        assert!(!genuine);
        assert_eq!(witness.unwrap().members(), &[1, 3]);
    }

    #[test]
    fn dicke_states_are_genuine() {
        for n in 2..=6 {
            for ell in 1..n {
                let (genuine, _) = is_genuine_pure(&dicke(n, ell).unwrap(), TOL).unwrap();
                assert!(genuine, "dicke({n},{ell})");
            }
        }
    }

    #[test]
    fn single_qubit_not_genuine() {
        let psi = PureState::basis_state(1, 0);
        assert_eq!(is_genuine_pure(&psi, TOL).unwrap(), (false, None));
    }

    #[test]
    fn factor_basis_state() {
        let psi = PureState::basis_state(2, 0b01);
        let s = Bipartition::new(2, [1]).unwrap();
        let (left, right, phase) = factor_across(&psi, &s, TOL).unwrap();
        assert_eq!(left, PureState::basis_state(1, 0));
        assert_eq!(right, PureState::basis_state(1, 1));
        assert!((phase - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn factor_swapping_state_into_bells() {
        let s = Bipartition::new(4, [1, 3]).unwrap();
        let (left, right, phase) = factor_across(&swapping_state(), &s, TOL).unwrap();
        let b00 = crate::catalog::bell(0, 0).unwrap();
        assert!(left.max_abs_diff(&b00) < 1e-12);
        assert!(right.max_abs_diff(&b00) < 1e-12);
        let rebuilt = PureState::assemble(&s, &left, &right)
            .unwrap()
            .phase_scaled(phase);
        assert!(rebuilt.max_abs_diff(&swapping_state()) < 1e-12);
    }

    #[test]
    fn factor_rejects_entangled_cut() {
        let s = Bipartition::new(2, [1]).unwrap();
        assert!(matches!(
            factor_across(&ghz(2).unwrap(), &s, TOL),
            Err(Error::NotAProduct { .. })
        ));
    }

    #[test]
    fn factor_single_qubit_product() {
        // (alpha|0> + |1>)^(x)3 split on the middle qubit
        let alpha = Complex64::new(0.8, -0.3);
        let q = PureState::from_unnormalized(1, vec![alpha, Complex64::ONE]).unwrap();
        let psi = q.tensor(&q).tensor(&q);
        let s = Bipartition::new(3, [2]).unwrap();
        let (left, _, _) = factor_across(&psi, &s, TOL).unwrap();
        let ratio = left.amplitudes()[0] / left.amplitudes()[1];
        assert!((ratio - alpha).norm() < 1e-10);
    }

    #[test]
    fn factorize_recovers_construction() {
        let psi = ghz(2)
            .unwrap()
            .tensor(&PureState::basis_state(1, 0))
            .tensor(&w(3).unwrap());
        let f = factorize(&psi, TOL).unwrap();
        assert_eq!(
            f.subsets(),
            vec![vec![1, 2], vec![3], vec![4, 5, 6]]
        );
        assert!(f.reconstruct().unwrap().max_abs_diff(&psi) < 1e-10);
        assert_eq!(f.degree(), 3);
    }

    #[test]
    fn factorize_genuine_state_is_single_factor() {
        let f = factorize(&ghz(4).unwrap(), TOL).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].qubits, vec![1, 2, 3, 4]);
    }

    #[test]
    fn factorize_full_product() {
        let alpha = Complex64::new(0.5, 0.25);
        let q = PureState::from_unnormalized(1, vec![alpha, Complex64::ONE]).unwrap();
        let psi = q.tensor(&q).tensor(&q).tensor(&q);
        let f = factorize(&psi, TOL).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert!(f.reconstruct().unwrap().max_abs_diff(&psi) < 1e-10);
    }

    #[test]
    fn factorize_order_independent() {
        for seed in 0..5u64 {
            let psi = random_product(5, &[2, 1, 2], seed).unwrap();
            let fwd = factorize_ordered(&psi, TOL, SubsetOrder::Forward).unwrap();
            let rev = factorize_ordered(&psi, TOL, SubsetOrder::Reverse).unwrap();
            assert_eq!(fwd.subsets(), rev.subsets(), "seed {seed}");
            assert!(rev.reconstruct().unwrap().max_abs_diff(&psi) < 1e-10);
        }
    }

    #[test]
    fn degree_examples() {
        let psi = ghz(2).unwrap().tensor(&w(3).unwrap());
        assert_eq!(degree_pure(&psi, TOL).unwrap(), 3);
        assert_eq!(degree_pure(&PureState::basis_state(4, 0), TOL).unwrap(), 1);
        assert_eq!(degree_pure(&dicke(5, 2).unwrap(), TOL).unwrap(), 5);
    }

    #[test]
    fn sum_of_products_ghz() {
        let psi = ghz(3).unwrap();
        let s = Bipartition::new(3, [1]).unwrap();
        let sop = sum_of_products(&psi, &s, TOL).unwrap();
        assert_eq!(sop.term_count(), 2);
        let amps = sop.reconstruct_amplitudes();
        let err: f64 = amps
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn sum_of_products_counts() {
        let product = random_product(4, &[2, 2], 3).unwrap();
        let s = Bipartition::new(4, [1, 2]).unwrap();
        assert_eq!(sum_of_products(&product, &s, TOL).unwrap().term_count(), 1);

        let d = dicke(4, 2).unwrap();
        assert_eq!(sum_of_products(&d, &s, TOL).unwrap().term_count(), 3);
    }

    #[test]
    fn sum_of_products_reconstructs_random_states() {
        for seed in 0..10u64 {
            let psi = random_pure(4, seed).unwrap();
            for s in Bipartition::canonical_cuts(4) {
                let sop = sum_of_products(&psi, &s, TOL).unwrap();
                assert_eq!(sop.term_count(), cut_rank(&psi, &s, TOL).unwrap());
                let amps = sop.reconstruct_amplitudes();
                let err = amps
                    .iter()
                    .zip(psi.amplitudes())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(err < 1e-9, "seed {seed} cut {s} err {err}");
            }
        }
    }

    #[test]
    fn classify_trivial_dicke_states() {
        let mut e0 = vec![Complex64::ZERO; 5];
        e0[0] = Complex64::ONE;
        let s = SymmetricState::new(4, e0).unwrap();
        assert_eq!(classify_symmetric(&s, TOL).unwrap(), SymmetricClass::TrivialDicke0);

        let mut en = vec![Complex64::ZERO; 5];
        en[4] = Complex64::ONE;
        let s = SymmetricState::new(4, en).unwrap();
        assert_eq!(classify_symmetric(&s, TOL).unwrap(), SymmetricClass::TrivialDickeN);
    }

    #[test]
    fn classify_product_with_ratio_two() {
        // weights proportional to 2^(n-l) are (2|0> + |1>)^(x)4
        let n = 4;
        let coeffs: Vec<Complex64> = (0..=n)
            .map(|l| re(2.0f64.powi((n - l) as i32) * (binomial(n, l) as f64).sqrt()))
            .collect();
        let s = SymmetricState::from_unnormalized(n, coeffs).unwrap();
        match classify_symmetric(&s, TOL).unwrap() {
            SymmetricClass::Product(alpha) => assert!((alpha - re(2.0)).norm() < 1e-10),
            other => panic!("expected product, got {other:?}"),
        }
        // and the rank criterion agrees
        let (genuine, _) = is_genuine_pure(&s.to_pure(), TOL).unwrap();
        assert!(!genuine);
    }

    #[test]
    fn classify_ghz_like_sparse_state() {
        let h = re(0.5f64.sqrt());
        let mut coeffs = vec![Complex64::ZERO; 6];
        coeffs[0] = h;
        coeffs[5] = h;
        let s = SymmetricState::new(5, coeffs).unwrap();
        assert_eq!(classify_symmetric(&s, TOL).unwrap(), SymmetricClass::Genuine);
        let (genuine, _) = is_genuine_pure(&s.to_pure(), TOL).unwrap();
        assert!(genuine);
    }

    #[test]
    fn classify_agrees_with_rank_criterion_on_random_states() {
        for seed in 0..40u64 {
            let n = 2 + (seed as usize % 5);
            let s = crate::catalog::random_symmetric(n, seed).unwrap();
            let class = classify_symmetric(&s, TOL).unwrap();
            let (genuine, _) = is_genuine_pure(&s.to_pure(), TOL).unwrap();
            assert_eq!(
                matches!(class, SymmetricClass::Genuine),
                genuine,
                "seed {seed} n {n}"
            );
        }
    }

    #[test]
    fn brute_force_definition_agrees_with_rank_test() {
        // definition-level check: a state is genuine iff no cut admits a
        // product split that reconstructs it
        let brute = |psi: &PureState| -> bool {
            for s in Bipartition::canonical_cuts(psi.n()) {
                let (left, right, phase) = factor_across(psi, &s, 1.0).unwrap();
                let rebuilt = PureState::assemble(&s, &left, &right)
                    .unwrap()
                    .phase_scaled(phase);
                if rebuilt.max_abs_diff(psi) < 1e-9 {
                    return false;
                }
            }
            true
        };
        for seed in 0..15u64 {
            let psi = if seed % 3 == 0 {
                random_product(4, &[2, 2], seed).unwrap()
            } else if seed % 3 == 1 {
                random_product(4, &[1, 3], seed).unwrap()
            } else {
                random_pure(4, seed).unwrap()
            };
            let (genuine, _) = is_genuine_pure(&psi, TOL).unwrap();
            assert_eq!(genuine, brute(&psi), "seed {seed}");
        }
    }

    #[test]
    fn projector_of_pure_factor_is_valid() {
        // guard: factors coming out of factorize stay normalized
        let psi = random_product(4, &[2, 2], 17).unwrap();
        let f = factorize(&psi, TOL).unwrap();
        for factor in &f.factors {
            let rho = factor.state.projector();
            assert!(MixedState::new(factor.state.n(), rho.matrix().clone()).is_ok());
        }
    }
}
