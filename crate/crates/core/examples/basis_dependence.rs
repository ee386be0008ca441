//! `j2` depends on the basis of matrix units: real orthogonal changes of
//! basis leave it alone, complex ones need not.
//!
//! cargo run --example basis_dependence

use kpositivity::random::{orthogonal, rng_from_seed, unitary};
use kpositivity::*;

fn main() -> Result<()> {
    let mut rng = rng_from_seed(3);
    let id = LinearMap::identity(3);

    let o = BasisChange::new(orthogonal(&mut rng, 3))?;
    let d = (&j2_in_basis(&id, &o)? - &j2(&id)).max_abs();
    println!("random orthogonal basis: max |Δ j2| = {d:.1e}");

    let u = BasisChange::new(unitary(&mut rng, 3))?;
    let d = (&j2_in_basis(&id, &u)? - &j2(&id)).max_abs();
    println!("random unitary basis:    max |Δ j2| = {d:.3}");

    let phase = CMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
    let p = BasisChange::new(phase)?;
    let id2 = LinearMap::identity(2);
    let d = (&j2_in_basis(&id2, &p)? - &j2(&id2)).max_abs();
    println!("diag(1, i) on 2x2:       max |Δ j2| = {d:.3}");

    // the Hilbert-Schmidt isometry holds regardless
    let t = LinearMap::reduction(3);
    println!(
        "isometry defect id vs reduction: {:.1e}",
        isometry_defect(&id, &t)?
    );
    Ok(())
}
