//! Classify permutation-symmetric states straight from their Dicke
//! coefficients, no matrix ranks needed: products have geometric weight
//! progressions, everything else (apart from the two trivial Dicke states)
//! is genuinely correlated.
//!
//! Run with: cargo run --example classify_symmetric

use num_complex::Complex64;

use corrank::pure::{classify_symmetric, is_genuine_pure};
use corrank::state::{binomial, SymmetricState};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn show(label: &str, s: &SymmetricState) -> corrank::Result<()> {
    let class = classify_symmetric(s, 1e-10)?;
    let (genuine, _) = is_genuine_pure(&s.to_pure(), 1e-10)?;
    println!("{label}: {class:?} (rank criterion says genuine = {genuine})");
    Ok(())
}

fn main() -> corrank::Result<()> {
    let n = 4;

    // (2|0> + |1>)^(x)4: weight amplitudes 2^(n-l)
    let product: Vec<Complex64> = (0..=n)
        .map(|l| re(2.0f64.powi((n - l) as i32) * (binomial(n, l) as f64).sqrt()))
        .collect();
    show(
        "(2|0> + |1>)^4     ",
        &SymmetricState::from_unnormalized(n, product)?,
    )?;

    // GHZ-like: only the extreme Dicke levels populated
    let h = re(0.5f64.sqrt());
    let mut ghz_like = vec![Complex64::ZERO; n + 1];
    ghz_like[0] = h;
    ghz_like[n] = h;
    show("(|0000> + |1111>)/r2", &SymmetricState::new(n, ghz_like)?)?;

    // a single middle Dicke level
    let mut w_like = vec![Complex64::ZERO; n + 1];
    w_like[1] = Complex64::ONE;
    show("dicke(4,1)          ", &SymmetricState::new(n, w_like)?)?;

    // the trivial ends
    let mut zero = vec![Complex64::ZERO; n + 1];
    zero[0] = Complex64::ONE;
    show("|0000>              ", &SymmetricState::new(n, zero)?)?;

    let random = corrank::catalog::random_symmetric(n, 42)?;
    show("random symmetric    ", &random)?;
    Ok(())
}
