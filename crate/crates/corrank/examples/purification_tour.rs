//! Purify a mixed state into a pure one with one-hot ancilla registers, for
//! every factorization of its rank, and verify the partial trace returns the
//! original state. This embedding is what reduces mixed-state detection to
//! the pure-state rank criterion.
//!
//! Run with: cargo run --example purification_tour

use corrank::catalog::dicke_mixture;
use corrank::mixed::{build_purification, spectral_decompose, GridAssignment};
use corrank::Bipartition;

fn main() -> corrank::Result<()> {
    let rho = dicke_mixture(4, 1, 2, 0.3)?;
    println!("rho = 0.3 P(dicke(4,1)) + 0.7 P(dicke(4,2))");

    let eigenpairs = spectral_decompose(&rho, 1e-12)?;
    let r = eigenpairs.len();
    println!("spectral rank {r}, weights: {:?}", {
        let w: Vec<String> = eigenpairs.iter().map(|(l, _)| format!("{l:.3}")).collect();
        w
    });

    for a in 1..=r {
        if r % a != 0 {
            continue;
        }
        let b = r / a;
        let p = build_purification(&eigenpairs, &GridAssignment::row_major(a, b))?;
        let total = p.state().n();
        let nonzero = p
            .state()
            .amplitudes()
            .iter()
            .filter(|z| z.norm() > 1e-12)
            .count();
        let keep = Bipartition::new(total, 1..=rho.n())?;
        let back = p.state().reduce(&keep)?;
        let dist = back.matrix().frobenius_distance(rho.matrix());
        println!(
            "grid {a}x{b}: purified to {total} qubits ({nonzero} nonzero amplitudes), \
             partial-trace distance {dist:.2e}"
        );
    }
    Ok(())
}
