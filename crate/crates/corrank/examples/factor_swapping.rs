//! The entanglement-swapping state looks fully entangled when cut between
//! the original Bell pairs, yet it factors exactly into two new Bell pairs.
//!
//! Run with: cargo run --example factor_swapping

use corrank::catalog::swapping_state;
use corrank::pure::{factorize, is_genuine_pure};
use corrank::{coefficient_matrix, Bipartition};

fn main() -> corrank::Result<()> {
    let phi = swapping_state();
    println!("|Phi> = (1/2) sum_xy |beta_xy>_AB (x) |beta_xy>_CD  (A,B,C,D = 1..4)\n");

    for members in [vec![1, 2], vec![1, 3], vec![1, 4]] {
        let s = Bipartition::new(4, members)?;
        let cm = coefficient_matrix(&phi, &s)?;
        println!("cut {s}: rank {}", cm.rank(1e-10)?);
        for i in 0..cm.matrix().rows() {
            let row: Vec<String> = (0..cm.matrix().cols())
                .map(|j| format!("{:5.2}", cm.matrix()[(i, j)].re))
                .collect();
            println!("    [{}]", row.join(" "));
        }
    }

    let (genuine, witness) = is_genuine_pure(&phi, 1e-10)?;
    println!("\ngenuine: {genuine}; first product cut: {}", witness.unwrap());

    let f = factorize(&phi, 1e-10)?;
    println!("factorization:");
    for factor in &f.factors {
        let amps: Vec<String> = factor
            .state
            .amplitudes()
            .iter()
            .map(|a| format!("{:.4}", a.re))
            .collect();
        println!("  qubits {:?}: [{}]", factor.qubits, amps.join(", "));
    }
    println!("(each factor is the Bell pair (|00> + |11>)/sqrt(2))");
    Ok(())
}
