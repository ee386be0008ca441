//! Positivity on rank-1 vectors must be read off `j2`, not `j1`: for the
//! identity map `j1` is the swap, which is negative on the singlet.
//!
//! cargo run --example j1_vs_j2

use kpositivity::*;

fn main() -> Result<()> {
    let id = LinearMap::identity(2);
    let v = CVector::from_real(&[0.0, 1.0, -1.0, 0.0]);

    let a = j1(&id).expectation(&v)?;
    let b = j2(&id).expectation(&v)?;
    println!("<j1(id) v, v> = {:+.3}", a.re);
    println!("<j2(id) v, v> = {:+.3}", b.re);
    println!(
        "j1(id) spectrum {:?}",
        hermitian_eig(&j1(&id), &VERDICT_TOL)?.eigenvalues
    );
    println!(
        "j2(id) spectrum {:?}",
        hermitian_eig(&j2(&id), &VERDICT_TOL)?.eigenvalues
    );

    // j1 is the partial transpose of j2 on the input factor
    let c2 = j2(&id);
    let pt = CMatrix::from_fn(4, 4, |r, s| c2[((s / 2) * 2 + r % 2, (r / 2) * 2 + s % 2)]);
    println!("j1 = partial transpose of j2: {}", pt == j1(&id));
    Ok(())
}
