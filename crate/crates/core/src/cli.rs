//! Library side of the `kpositivity` command-line tool.
//!
//! # Map spec files
//!
//! A map is described by a JSON document. Matrices are flat row-major
//! arrays of `[re, im]` pairs with 0-based indexing; floats are written in
//! shortest round-trip form, so reading a file back is lossless.
//!
//! ```json
//! {"kind": "choi2", "n": 2, "m": 2, "choi2": [[1,0],[0,0], ...]}
//! {"kind": "kraus", "n": 2, "m": 3, "kraus": [[[re,im], ...], ...]}
//! {"kind": "zoo", "n": 3, "m": 3, "zoo": "depolarizing", "params": [0.5]}
//! ```
//!
//! * `choi2`: `(n m)^2` entries; the `m x m` block `(i, j)` is `T(E_ij)`.
//! * `kraus`: each operator is `m x n` (`m n` entries); `T(A) = sum K A K*`.
//! * `zoo`: one of `identity`, `transposition`, `reduction`, `depolarizing`;
//!   `m` is optional and must equal `n`.
//!
//! On the command line a zoo map can also be given inline as
//! `zoo:<name>:<n>[:<p1>,<p2>...]`.
//!
//! # Vector files
//!
//! `schmidt` reads a JSON array of `[re, im]` pairs, index `i*m + j` for
//! `e_i ⊗ e_j`.
//!
//! # Exit codes
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | internal failure (e.g. eigensolver did not converge, write error) |
//! | 2 | complete positivity violated and `--fail-on-violation` given |
//! | 3 | malformed input: bad spec or vector file, dimension mismatch, zero vector, unknown zoo name |
//! | 4 | dimension above the configured cap |

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::certify::SearchBudget;
use crate::error::{Error, Result};
use crate::maps::{from_pairs, from_spec, zoo, MapSpec, MapSpecDoc, ZooMap};
use crate::numerics::{hermitian_eig, CVector, Tolerance};
use crate::positivity::{
    hermiticity_defect_j2, is_completely_positive, is_k_positive, PositivityVerdict, Status,
    VERDICT_TOL,
};
use crate::schmidt::schmidt_decompose;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;

/// Default cap on `n * m` for `analyze`.
pub const DEFAULT_MAX_DIM: usize = 64;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::MalformedSpec(_)
        | Error::DimensionMismatch(_)
        | Error::ZeroVector
        | Error::UnknownZooName(_)
        | Error::EmptyInput(_)
        | Error::BadRank { .. } => EXIT_MALFORMED,
        Error::DimensionTooLarge { .. } => EXIT_TOO_LARGE,
        _ => EXIT_INTERNAL,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            other => Err(Error::MalformedSpec(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Defaults to `1..=min(n, m)`.
    pub k_list: Option<Vec<usize>>,
    pub tol: Tolerance,
    pub budget: SearchBudget,
    pub seed: u64,
    pub max_dim: usize,
    pub record_timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            k_list: None,
            tol: VERDICT_TOL,
            budget: SearchBudget::default(),
            seed: 42,
            max_dim: DEFAULT_MAX_DIM,
            record_timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KVerdict {
    pub k: usize,
    pub verdict: PositivityVerdict,
}

/// Wall-clock milliseconds per stage.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub build_ms: f64,
    pub spectrum_ms: f64,
    pub complete_positivity_ms: f64,
    pub k_positivity_ms: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub map: MapSpecDoc,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub budget: SearchBudget,
    pub hermiticity_preserving: bool,
    pub hermiticity_defect: f64,
    /// Choi eigenvalues, descending; empty when the Choi matrix is not hermitian.
    pub choi_spectrum: Vec<f64>,
    /// Absent when the map does not preserve hermiticity.
    pub cp_verdict: Option<PositivityVerdict>,
    /// Ascending in `k`.
    pub k_verdicts: Vec<KVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl AnalysisReport {
    pub fn cp_violated(&self) -> bool {
        self.cp_verdict
            .as_ref()
            .is_some_and(|v| v.status == Status::Violated)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = &self.map.kind;
        let name = self
            .map
            .zoo
            .as_deref()
            .map(|z| format!(" `{z}`"))
            .unwrap_or_default();
        let _ = writeln!(out, "map: {kind}{name}, n = {}, m = {}", self.n, self.m);
        let _ = writeln!(
            out,
            "hermiticity-preserving: {} (defect {:.3e})",
            self.hermiticity_preserving, self.hermiticity_defect
        );
        if !self.choi_spectrum.is_empty() {
            let spec: Vec<String> = self
                .choi_spectrum
                .iter()
                .map(|l| format!("{l:.6}"))
                .collect();
            let _ = writeln!(out, "Choi spectrum: [{}]", spec.join(", "));
        }
        match &self.cp_verdict {
            Some(v) => {
                let _ = writeln!(out, "completely positive: {}", describe(v));
            }
            None => {
                let _ = writeln!(
                    out,
                    "completely positive: no (map does not preserve hermiticity)"
                );
            }
        }
        for kv in &self.k_verdicts {
            let _ = writeln!(out, "{}-positive: {}", kv.k, describe(&kv.verdict));
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(
                out,
                "timings (ms): build {:.2}, spectrum {:.2}, cp {:.2}, k {:?}",
                t.build_ms, t.spectrum_ms, t.complete_positivity_ms, t.k_positivity_ms
            );
        }
        out
    }
}

fn describe(v: &PositivityVerdict) -> String {
    match (&v.status, &v.certificate) {
        (Status::Positive, _) => format!("yes (lowest Choi eigenvalue {:.6e})", v.best_value),
        (Status::Violated, Some(c)) => format!(
            "NO, violated: <J2 v, v> = {:.9} on a Schmidt-rank-{} vector",
            c.value, c.schmidt_rank
        ),
        (Status::Violated, None) => "NO, violated".to_string(),
        (Status::Inconclusive, _) => format!(
            "inconclusive, no violation found (best value {:.6e})",
            v.best_value
        ),
    }
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn analyze(spec: &MapSpec, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let (n, m) = spec.dims();
    if n * m > opts.max_dim {
        return Err(Error::DimensionTooLarge {
            dim: n * m,
            cap: opts.max_dim,
        });
    }
    let mut k_list = opts
        .k_list
        .clone()
        .unwrap_or_else(|| (1..=n.min(m)).collect());
    if let Some(&k) = k_list.iter().find(|&&k| k == 0) {
        return Err(Error::BadRank { k, max: n.min(m) });
    }
    k_list.sort_unstable();
    k_list.dedup();

    let start = Instant::now();
    let t = from_spec(spec)?;
    let build_ms = ms_since(start);

    let defect = hermiticity_defect_j2(&t);
    let preserving = defect <= opts.tol.abs_eps;

    let start = Instant::now();
    let choi_spectrum = if preserving {
        hermitian_eig(t.choi2(), &opts.tol)?.eigenvalues
    } else {
        Vec::new()
    };
    let spectrum_ms = ms_since(start);

    let start = Instant::now();
    let cp_verdict = if preserving {
        Some(is_completely_positive(&t, &opts.tol)?)
    } else {
        None
    };
    let complete_positivity_ms = ms_since(start);

    let mut k_verdicts = Vec::new();
    let mut k_positivity_ms = Vec::new();
    if preserving {
        for &k in &k_list {
            let start = Instant::now();
            let verdict = is_k_positive(&t, k, &opts.tol, &opts.budget, opts.seed)?;
            k_positivity_ms.push(ms_since(start));
            k_verdicts.push(KVerdict { k, verdict });
        }
    }

    Ok(AnalysisReport {
        map: spec.to_doc(),
        n,
        m,
        seed: opts.seed,
        tolerance: opts.tol,
        budget: opts.budget,
        hermiticity_preserving: preserving,
        hermiticity_defect: defect,
        choi_spectrum,
        cp_verdict,
        k_verdicts,
        timings: opts.record_timings.then_some(Timings {
            build_ms,
            spectrum_ms,
            complete_positivity_ms,
            k_positivity_ms,
        }),
    })
}

/// Resolves an `analyze` input: either `zoo:<name>:<n>[:<params>]` or a spec file path.
pub fn load_spec(input: &str) -> Result<MapSpec> {
    if let Some(rest) = input.strip_prefix("zoo:") {
        let mut parts = rest.split(':');
        let name = parts.next().unwrap_or_default();
        let n = parts
            .next()
            .ok_or_else(|| Error::MalformedSpec("zoo shorthand needs a dimension".into()))?
            .parse::<usize>()
            .map_err(|e| Error::MalformedSpec(format!("bad dimension: {e}")))?;
        let params = match parts.next() {
            Some(p) => parse_list::<f64>(p)?,
            None => Vec::new(),
        };
        if parts.next().is_some() {
            return Err(Error::MalformedSpec(
                "too many `:` fields in zoo shorthand".into(),
            ));
        }
        return zoo(name, n, &params);
    }
    let text = read_file(input)?;
    MapSpec::from_json(&text)
}

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedSpec(format!("cannot read {path}: {e}")))
}

/// Comma-separated list, e.g. `1,2,3`.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|e| Error::MalformedSpec(format!("bad list entry `{s}`: {e}")))
        })
        .collect()
}

pub fn parse_vector(text: &str) -> Result<CVector> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)
        .map_err(|e| Error::MalformedSpec(format!("bad vector file: {e}")))?;
    Ok(CVector::from(from_pairs(&pairs)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtReport {
    pub n: usize,
    pub m: usize,
    pub schmidt_number: usize,
    pub coefficients: Vec<f64>,
    /// `|v - sum c_k a_k ⊗ b_k|`.
    pub residual: f64,
}

impl SchmidtReport {
    pub fn to_text(&self) -> String {
        let coeffs: Vec<String> = self
            .coefficients
            .iter()
            .map(|c| format!("{c:.10}"))
            .collect();
        format!(
            "Schmidt number: {}\ncoefficients: [{}]\nreconstruction residual: {:.3e}\n",
            self.schmidt_number,
            coeffs.join(", "),
            self.residual
        )
    }
}

pub fn schmidt_report(v: &CVector, n: usize, m: usize, tol: &Tolerance) -> Result<SchmidtReport> {
    let form = schmidt_decompose(v, n, m, tol)?;
    let residual = (v - &form.reconstruct()).norm();
    Ok(SchmidtReport {
        n,
        m,
        schmidt_number: form.rank(),
        coefficients: form.coefficients,
        residual,
    })
}

pub fn zoo_listing() -> String {
    let mut out = String::new();
    for z in ZooMap::ALL {
        let _ = writeln!(out, "{:<14} {}", z.name(), z.description());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> AnalyzeOptions {
        AnalyzeOptions {
            budget: SearchBudget::new(16, 300),
            ..Default::default()
        }
    }

    #[test]
    fn transposition_report() {
        let r = analyze(&zoo("transposition", 2, &[]).unwrap(), &quick()).unwrap();
        assert_eq!(r.k_verdicts.len(), 2);
        assert_ne!(r.k_verdicts[0].verdict.status, Status::Violated);
        let v2 = &r.k_verdicts[1].verdict;
        assert_eq!(v2.status, Status::Violated);
        assert!((v2.best_value + 1.0).abs() < 1e-9);
        assert!(r.cp_violated());
    }

    #[test]
    fn identity_report_is_all_positive() {
        let r = analyze(&zoo("identity", 3, &[]).unwrap(), &quick()).unwrap();
        assert_eq!(r.cp_verdict.as_ref().unwrap().status, Status::Positive);
        assert!(r
            .k_verdicts
            .iter()
            .all(|kv| kv.verdict.status == Status::Positive));
    }

    #[test]
    fn reduction_report() {
        let r = analyze(&zoo("reduction", 3, &[]).unwrap(), &quick()).unwrap();
        let cp = r.cp_verdict.as_ref().unwrap();
        assert_eq!(cp.status, Status::Violated);
        assert!((cp.best_value + 2.0).abs() < 1e-9);
        assert_ne!(r.k_verdicts[0].verdict.status, Status::Violated);
    }

    #[test]
    fn non_preserving_map_yields_partial_report() {
        let e = crate::numerics::CMatrix::unit(2, 2, 0, 1);
        let t = crate::maps::LinearMap::from_action(2, 2, |a| e.scale(a.trace())).unwrap();
        let spec = MapSpec::Choi2 {
            n: 2,
            m: 2,
            choi2: t.into_choi2(),
        };
        let r = analyze(&spec, &quick()).unwrap();
        assert!(!r.hermiticity_preserving);
        assert!(r.cp_verdict.is_none() && r.k_verdicts.is_empty());
        assert!(r.to_text().contains("does not preserve hermiticity"));
    }

    #[test]
    fn report_json_roundtrip() {
        let r = analyze(&zoo("reduction", 2, &[]).unwrap(), &quick()).unwrap();
        assert_eq!(AnalysisReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn dimension_cap_and_bad_k() {
        let opts = AnalyzeOptions {
            max_dim: 8,
            ..quick()
        };
        let err = analyze(&zoo("identity", 3, &[]).unwrap(), &opts).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_TOO_LARGE);
        let opts = AnalyzeOptions {
            k_list: Some(vec![0]),
            ..quick()
        };
        let err = analyze(&zoo("identity", 2, &[]).unwrap(), &opts).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_MALFORMED);
    }

    #[test]
    fn zoo_shorthand() {
        assert_eq!(
            load_spec("zoo:depolarizing:2:0.5").unwrap(),
            zoo("depolarizing", 2, &[0.5]).unwrap()
        );
        assert_eq!(
            load_spec("zoo:identity:3").unwrap(),
            zoo("identity", 3, &[]).unwrap()
        );
        assert!(matches!(
            load_spec("zoo:nope:3"),
            Err(Error::UnknownZooName(_))
        ));
        assert!(matches!(
            load_spec("zoo:identity"),
            Err(Error::MalformedSpec(_))
        ));
    }

    #[test]
    fn schmidt_report_of_singlet() {
        let v =
            parse_vector("[[0,0],[0.7071067811865476,0],[-0.7071067811865476,0],[0,0]]").unwrap();
        let r = schmidt_report(&v, 2, 2, &Tolerance::default()).unwrap();
        assert_eq!(r.schmidt_number, 2);
        for c in &r.coefficients {
            assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
        assert!(r.residual < 1e-12);
        let err = schmidt_report(&v, 2, 3, &Tolerance::default()).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_MALFORMED);
    }

    #[test]
    fn listing_has_four_entries() {
        assert_eq!(zoo_listing().lines().count(), 4);
    }
}
