//! Spec files and full analysis reports, as produced by the CLI.
//!
//! cargo run --example analysis_report

use kpositivity::cli::{analyze, AnalysisReport, AnalyzeOptions};
use kpositivity::*;

fn main() -> Result<()> {
    let spec = zoo("depolarizing", 2, &[0.5])?;
    println!("{}", spec.to_json());

    let kraus = to_kraus(&from_spec(&spec)?, &Tolerance::default())?;
    let as_kraus = MapSpec::Kraus {
        n: 2,
        m: 2,
        operators: kraus.operators().to_vec(),
    };
    let doc = as_kraus.to_json();
    println!("Kraus form: {} bytes of JSON", doc.len());
    assert_eq!(MapSpec::from_json(&doc)?, as_kraus);

    let report = analyze(&zoo("transposition", 2, &[])?, &AnalyzeOptions::default())?;
    print!("{}", report.to_text());
    let json = report.to_json();
    assert_eq!(AnalysisReport::from_json(&json)?, report);
    Ok(())
}
