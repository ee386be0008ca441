//! The transpose on 2x2 matrices is positive but not 2-positive.
//!
//! cargo run --example transposition_witness

use kpositivity::positivity::certificate_ancilla_input;
use kpositivity::*;

fn main() -> Result<()> {
    let t = LinearMap::transposition(2);
    let budget = SearchBudget::default();

    for k in 1..=2 {
        let v = is_k_positive(&t, k, &VERDICT_TOL, &budget, 42)?;
        println!(
            "k = {k}: {:?} via {:?}, best value {:+.3e}",
            v.status, v.method, v.best_value
        );
        if let Some(cert) = &v.certificate {
            let form = schmidt_decompose(&cert.vector, 2, 2, &Tolerance::default())?;
            println!("  certificate Schmidt coefficients {:?}", form.coefficients);

            // feed the certificate through 1_2 ⊗ T
            let (input, y) = certificate_ancilla_input(&cert.vector, 2, 2, k)?;
            let out = t.apply_extended(k, &input)?;
            println!("  <(1 ⊗ T)(xx*) y, y> = {:+.6}", out.expectation(&y)?.re);
            println!(
                "  lowest eigenvalue of the output {:+.6}",
                hermitian_eig(&out, &VERDICT_TOL)?.min()
            );
        }
    }
    Ok(())
}
