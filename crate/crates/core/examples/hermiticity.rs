//! Three equivalent tests for hermiticity preservation.
//!
//! cargo run --example hermiticity

use kpositivity::random::{gaussian_matrix, rng_from_seed};
use kpositivity::*;

fn main() -> Result<()> {
    let mut rng = rng_from_seed(4);
    let kraus = KrausSet::new(vec![
        gaussian_matrix(&mut rng, 3, 2),
        gaussian_matrix(&mut rng, 3, 2),
    ])?;
    let maps = [
        ("Kraus map", LinearMap::from_kraus(&kraus)),
        (
            "generic map",
            LinearMap::from_choi2(gaussian_matrix(&mut rng, 6, 6), 2, 3)?,
        ),
    ];
    for (name, t) in &maps {
        println!(
            "{name:12} basis defect {:.1e}, j1 defect {:.1e}, j2 defect {:.1e}, preserving: {}",
            hermiticity_defect(t),
            j1(t).hermiticity_defect(),
            j2(t).hermiticity_defect(),
            is_hermiticity_preserving(t, &VERDICT_TOL)
        );
    }
    Ok(())
}
