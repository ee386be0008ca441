//! Checking verdicts against the definition: feed random pure states of
//! `C^k ⊗ C^n` through `1_k ⊗ T` and look for negative eigenvalues.
//!
//! cargo run --example ancilla_crosscheck

use kpositivity::maps::ZooMap;
use kpositivity::positivity::crosscheck_verdict;
use kpositivity::*;

fn main() -> Result<()> {
    let budget = SearchBudget::default();
    for z in ZooMap::ALL {
        let t = z.build(3, &[])?;
        for k in 1..=3 {
            let v = is_k_positive(&t, k, &VERDICT_TOL, &budget, 7)?;
            let c = crosscheck_verdict(&t, &v, 500, 8)?;
            println!(
                "{:13} k = {k}: {:12} sampled min eig {:+.3}, certificate eig {:>8}, consistent {}",
                z.name(),
                format!("{:?}", v.status),
                c.report.min_eigenvalue,
                c.certificate_eigenvalue
                    .map_or("-".into(), |e| format!("{e:+.3}")),
                c.consistent
            );
        }
    }
    Ok(())
}
