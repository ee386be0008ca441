//! Minimizing a hermitian form over vectors of bounded Schmidt rank.
//!
//! cargo run --example rank_constrained_search

use kpositivity::certify::RankConstrainedDescent;
use kpositivity::schmidt::sample_rank_k;
use kpositivity::*;

fn main() -> Result<()> {
    // j2 of the reduction map is I - |Ω><Ω|
    let w = LinearMap::reduction(3).into_choi2();
    let budget = SearchBudget::new(32, 500);

    for k in 1..=3 {
        let cert = minimize_rank_constrained(&w, 3, 3, k, &budget, 11)?;
        let sampled = brute_force_min(&w, 3, 3, k, 20_000, 11)?;
        println!(
            "k = {k}: search {:+.6} ({} iterations over {} restarts), sampling {:+.6}",
            cert.value, cert.iterations_used, cert.restarts_used, sampled
        );
    }

    // one descent, step by step
    let v0 = sample_rank_k(3, 3, 2, 5)?;
    let mut run = RankConstrainedDescent::new(&w, 3, 3, 2, &v0, StepRule::Spectral)?;
    print!("trajectory:");
    for _ in 0..8 {
        print!(" {:+.4}", run.step()?.value);
    }
    println!();
    Ok(())
}
