//! Named states and seeded random generators.
//!
//! Four-qubit states use the label order A=1, B=2, C=3, D=4.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::state::{binomial, MixedState, PureState, SymmetricState};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Dicke state: uniform superposition of all weight-`ell` basis strings.
pub fn dicke(n: usize, ell: usize) -> Result<PureState> {
    if n == 0 {
        return Err(Error::BadInput("need at least one qubit".into()));
    }
    if ell > n {
        return Err(Error::BadInput(format!(
            "excitation count {ell} exceeds {n} qubits"
        )));
    }
    let amp = re(1.0 / (binomial(n, ell) as f64).sqrt());
    let amplitudes = (0..1usize << n)
        .map(|v| {
            if v.count_ones() as usize == ell {
                amp
            } else {
                Complex64::ZERO
            }
        })
        .collect();
    PureState::new(n, amplitudes)
}

/// Bell state (|0,y> + (-1)^x |1,not-y>) / sqrt(2).
pub fn bell(x: u8, y: u8) -> Result<PureState> {
    if x > 1 || y > 1 {
        return Err(Error::BadInput(format!("bell indices must be bits, got ({x},{y})")));
    }
    let h = re(0.5f64.sqrt());
    let mut amplitudes = vec![Complex64::ZERO; 4];
    amplitudes[y as usize] = h;
    amplitudes[0b10 | (1 - y) as usize] = if x == 1 { -h } else { h };
    PureState::new(2, amplitudes)
}

/// GHZ state (|0...0> + |1...1>) / sqrt(2).
pub fn ghz(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::BadInput("ghz needs at least 2 qubits".into()));
    }
    let h = re(0.5f64.sqrt());
    let mut amplitudes = vec![Complex64::ZERO; 1 << n];
    amplitudes[0] = h;
    amplitudes[(1 << n) - 1] = h;
    PureState::new(n, amplitudes)
}

/// W state: the single-excitation Dicke state.
pub fn w(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::BadInput("w needs at least 2 qubits".into()));
    }
    dicke(n, 1)
}

/// The 4-qubit entanglement-swapping state
/// (1/2) sum_xy |beta_xy>_AB (x) |beta_xy>_CD.
///
/// Expanding the Bell sum leaves amplitude 1/2 exactly on the four strings
/// with bit(A) = bit(C) and bit(B) = bit(D), i.e. the state is
/// |beta_00>_AC (x) |beta_00>_BD after relabeling; it is built in that closed
/// form so the amplitudes are exact dyadic rationals.
pub fn swapping_state() -> PureState {
    let mut amplitudes = vec![Complex64::ZERO; 16];
    for (v, amp) in amplitudes.iter_mut().enumerate() {
        let (a, b, c, d) = ((v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1);
        if a == c && b == d {
            *amp = re(0.5);
        }
    }
    PureState::new(4, amplitudes).expect("closed-form swapping state is normalized")
}

/// The Smolin state (1/4) sum_xy P(beta_xy)_AB (x) P(beta_xy)_CD.
pub fn smolin() -> MixedState {
    let parts: Vec<(f64, MixedState)> = (0..4u8)
        .map(|k| {
            let (x, y) = (k >> 1, k & 1);
            let pair = bell(x, y).unwrap();
            (0.25, pair.projector().tensor(&pair.projector()))
        })
        .collect();
    MixedState::mix(&parts).expect("smolin mixture is a valid density matrix")
}

/// Convex mixture p * GHZ + (1-p) * W on n qubits.
pub fn ghz_w_mixture(n: usize, p: f64) -> Result<MixedState> {
    check_probability(p)?;
    MixedState::mix(&[
        (p, ghz(n)?.projector()),
        (1.0 - p, w(n)?.projector()),
    ])
}

/// Convex mixture of two distinct Dicke projectors; its rank is 2.
pub fn dicke_mixture(n: usize, ell: usize, ell_prime: usize, p: f64) -> Result<MixedState> {
    check_probability(p)?;
    if ell == ell_prime {
        return Err(Error::BadInput(
            "dicke mixture needs two distinct excitation counts".into(),
        ));
    }
    MixedState::mix(&[
        (p, dicke(n, ell)?.projector()),
        (1.0 - p, dicke(n, ell_prime)?.projector()),
    ])
}

fn check_probability(p: f64) -> Result<()> {
    if p.is_nan() || p <= 0.0 || p >= 1.0 {
        return Err(Error::BadInput(format!(
            "mixing probability must lie strictly in (0,1), got {p}"
        )));
    }
    Ok(())
}

/// One draw from the standard complex Gaussian.
fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller on two uniform draws
    let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let v: f64 = rng.random();
    let r = (-2.0 * u.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * v;
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Haar-like random pure state: complex Gaussian amplitudes, normalized.
pub fn random_pure(n: usize, seed: u64) -> Result<PureState> {
    if n == 0 {
        return Err(Error::BadInput("need at least one qubit".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amplitudes: Vec<Complex64> = (0..1usize << n).map(|_| gaussian(&mut rng)).collect();
    PureState::from_unnormalized(n, amplitudes)
}

/// Exact tensor product of independently sampled random pure factors whose
/// sizes are `sizes` (consecutive label blocks, summing to n).
pub fn random_product(n: usize, sizes: &[usize], seed: u64) -> Result<PureState> {
    check_sizes(n, sizes)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state: Option<PureState> = None;
    for &size in sizes {
        let amplitudes: Vec<Complex64> = (0..1usize << size).map(|_| gaussian(&mut rng)).collect();
        let factor = PureState::from_unnormalized(size, amplitudes)?;
        state = Some(match state {
            None => factor,
            Some(acc) => acc.tensor(&factor),
        });
    }
    Ok(state.unwrap())
}

/// Random rank-`rank` density matrix from a Ginibre factor G: rho = GG+/tr.
pub fn random_mixed(n: usize, rank: usize, seed: u64) -> Result<MixedState> {
    let dim = 1usize << n;
    if n == 0 || rank == 0 || rank > dim {
        return Err(Error::BadInput(format!(
            "rank must lie in 1..={dim} for {n} qubits, got {rank}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_mixed_with(&mut rng, n, rank)
}

fn random_mixed_with(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> Result<MixedState> {
    let dim = 1usize << n;
    let g = CMatrix::from_fn(dim, rank, |_, _| gaussian(rng));
    let gram = g.matmul(&g.conjugate_transpose())?;
    let trace = gram.trace().re;
    MixedState::new(n, gram.scale(re(1.0 / trace)))
}

/// Exact tensor product of independently sampled mixed factors with the given
/// sizes and ranks (consecutive label blocks).
pub fn random_mixed_product(
    n: usize,
    sizes: &[usize],
    ranks: &[usize],
    seed: u64,
) -> Result<MixedState> {
    check_sizes(n, sizes)?;
    if ranks.len() != sizes.len() {
        return Err(Error::BadInput(format!(
            "{} ranks for {} factors",
            ranks.len(),
            sizes.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state: Option<MixedState> = None;
    for (&size, &rank) in sizes.iter().zip(ranks) {
        if rank == 0 || rank > 1 << size {
            return Err(Error::BadInput(format!(
                "rank {rank} invalid for a {size}-qubit factor"
            )));
        }
        let factor = random_mixed_with(&mut rng, size, rank)?;
        state = Some(match state {
            None => factor,
            Some(acc) => acc.tensor(&factor),
        });
    }
    Ok(state.unwrap())
}

/// Random symmetric state over the normalized Dicke basis.
pub fn random_symmetric(n: usize, seed: u64) -> Result<SymmetricState> {
    if n == 0 {
        return Err(Error::BadInput("need at least one qubit".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Complex64> = (0..=n).map(|_| gaussian(&mut rng)).collect();
    SymmetricState::from_unnormalized(n, coeffs)
}

fn check_sizes(n: usize, sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::BadInput("factor sizes must be positive".into()));
    }
    let total: usize = sizes.iter().sum();
    if total != n {
        return Err(Error::BadInput(format!(
            "factor sizes {sizes:?} sum to {total}, expected {n}"
        )));
    }
    Ok(())
}
