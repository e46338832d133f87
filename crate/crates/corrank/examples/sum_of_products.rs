//! Expand a state as a minimal sum of bipartite product terms across a cut:
//! the term count equals the cut rank, and no shorter expansion exists.
//!
//! Run with: cargo run --example sum_of_products

use corrank::catalog::{dicke, ghz};
use corrank::pure::sum_of_products;
use corrank::{Bipartition, PureState};

fn show(label: &str, psi: &PureState, members: Vec<usize>) -> corrank::Result<()> {
    let s = Bipartition::new(psi.n(), members)?;
    let sop = sum_of_products(psi, &s, 1e-10)?;
    println!("{label}, cut {s}: {} product terms", sop.term_count());
    for (t, term) in sop.terms.iter().enumerate() {
        let left: Vec<String> = term.left.iter().map(|z| format!("{:.3}", z.re)).collect();
        let right: Vec<String> = term.right.iter().map(|z| format!("{:.3}", z.re)).collect();
        println!("  term {t}: left [{}] (x) right [{}]", left.join(", "), right.join(", "));
    }
    let rebuilt = sop.reconstruct_amplitudes();
    let err = rebuilt
        .iter()
        .zip(psi.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("  reconstruction error: {err:.2e}\n");
    Ok(())
}

fn main() -> corrank::Result<()> {
    show("ghz(3)", &ghz(3)?, vec![1])?;
    show("dicke(4,2)", &dicke(4, 2)?, vec![1, 2])?;
    let product = ghz(2)?.tensor(&ghz(2)?);
    show("ghz(2) (x) ghz(2)", &product, vec![1, 2])?;
    Ok(())
}
