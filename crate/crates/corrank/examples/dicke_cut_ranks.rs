//! Cut ranks of Dicke states: the front cut of size l has rank
//! min(l, n - l) + 1, and every Dicke state with 0 < l < n is genuinely
//! correlated.
//!
//! Run with: cargo run --example dicke_cut_ranks

use corrank::catalog::dicke;
use corrank::coeff::cut_rank;
use corrank::pure::is_genuine_pure;
use corrank::Bipartition;

fn main() -> corrank::Result<()> {
    for n in 3..=6usize {
        for ell in 1..n {
            let state = dicke(n, ell)?;
            let front = Bipartition::new(n, 1..=ell)?;
            let rank = cut_rank(&state, &front, 1e-10)?;
            let (genuine, _) = is_genuine_pure(&state, 1e-10)?;
            println!(
                "dicke({n},{ell}): rank across {front} = {rank} (min(l, n-l)+1 = {}), genuine: {genuine}",
                ell.min(n - ell) + 1
            );
        }
    }
    Ok(())
}
