//! Factor composite states into genuinely correlated components and compute
//! the degree of correlations (the size of the largest component for pure
//! states, the largest subset with genuinely correlated marginal in general).
//!
//! Run with: cargo run --example degree_and_factors

use corrank::catalog::{ghz, random_mixed, smolin, w};
use corrank::mixed::{degree_of_correlations, factorize_mixed};
use corrank::pure::factorize;
use corrank::state::PureState;
use corrank::Tolerances;

fn main() -> corrank::Result<()> {
    let tols = Tolerances::default();

    // pure composite: ghz(2) (x) |0> (x) w(3)
    let psi = ghz(2)?
        .tensor(&PureState::basis_state(1, 0))
        .tensor(&w(3)?);
    let f = factorize(&psi, tols.rank)?;
    println!("ghz(2) (x) |0> (x) w(3):");
    for factor in &f.factors {
        println!("  component on qubits {:?}", factor.qubits);
    }
    let (degree, witness) = degree_of_correlations(&psi.into(), &tols)?;
    println!("  degree {degree}, carried by {witness:?}\n");

    // mixed composite: 2-qubit noise (x) Smolin
    let rho = random_mixed(2, 3, 5)?.tensor(&smolin());
    let factors = factorize_mixed(&rho, &tols)?;
    println!("random 2-qubit mixed (x) smolin:");
    for factor in &factors {
        println!("  component on qubits {:?}", factor.qubits);
    }
    let (degree, witness) = degree_of_correlations(&rho.into(), &tols)?;
    println!("  degree {degree}, carried by {witness:?}");
    Ok(())
}
