//! Complete positivity from the Choi spectrum, and Kraus operators for the
//! maps that pass.
//!
//! cargo run --example complete_positivity

use kpositivity::*;

fn main() -> Result<()> {
    for p in [0.0, 0.5, 1.0] {
        let t = LinearMap::depolarizing(2, p)?;
        let v = is_completely_positive(&t, &VERDICT_TOL)?;
        println!(
            "depolarizing p = {p}: {:?}, lowest Choi eigenvalue {:+.4}",
            v.status, v.best_value
        );
        if v.status == Status::Positive {
            let kraus = to_kraus(&t, &Tolerance::default())?;
            let back = LinearMap::from_kraus(&kraus);
            println!(
                "  {} Kraus operators, Choi roundtrip error {:.1e}",
                kraus.len(),
                (back.choi2() - t.choi2()).max_abs()
            );
        }
    }

    let r = LinearMap::reduction(3);
    let v = is_completely_positive(&r, &VERDICT_TOL)?;
    println!(
        "reduction n = 3: {:?}, lowest Choi eigenvalue {:+.4}",
        v.status, v.best_value
    );
    match to_kraus(&r, &Tolerance::default()) {
        Ok(_) => println!("  unexpected Kraus form"),
        Err(e) => println!("  no Kraus form: {e}"),
    }
    Ok(())
}
