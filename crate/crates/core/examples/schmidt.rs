//! Schmidt decompositions and ranks.
//!
//! cargo run --example schmidt

use kpositivity::random::{gaussian_vector, rng_from_seed};
use kpositivity::schmidt::{reduced_density_rank, sample_rank_k};
use kpositivity::*;

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let mut rng = rng_from_seed(1);

    let v = gaussian_vector(&mut rng, 12);
    let form = schmidt_decompose(&v, 3, 4, &tol)?;
    println!(
        "generic vector in C^3 ⊗ C^4: coefficients {:.4?}",
        form.coefficients
    );
    println!(
        "  reconstruction error {:.1e}",
        (&form.reconstruct() - &v).norm()
    );

    // a sum of s products has rank at most s
    let xs: Vec<_> = (0..2).map(|_| gaussian_vector(&mut rng, 3)).collect();
    let ys: Vec<_> = (0..2).map(|_| gaussian_vector(&mut rng, 4)).collect();
    let w = build_from_systems(&xs, &ys)?;
    println!(
        "sum of two products: rank {}",
        schmidt_rank(&w, 3, 4, &tol)?
    );

    for k in 1..=3 {
        let s = sample_rank_k(3, 4, k, k as u64)?;
        println!(
            "sampled rank {k}: SVD rank {}, reduced-density rank {}",
            schmidt_rank(&s, 3, 4, &tol)?,
            reduced_density_rank(&s, 3, 4, &tol)?
        );
    }
    Ok(())
}
