//! Hermiticity preservation, k-positivity and complete positivity.
//!
//! A map `T: C^{n x n} -> C^{m x m}` is k-positive exactly when
//! `<j2(T) v, v> >= 0` for every `v` in `C^n ⊗ C^m` of Schmidt rank at most
//! `k`. Rank `min(n, m)` covers every vector, so at that point k-positivity
//! is complete positivity and reduces to `j2(T) >= 0`.
//!
//! Verdicts are one-sided below `min(n, m)`: a negative form value on a
//! rank-`k` vector is a certificate of non-k-positivity, but a failed search
//! proves nothing. `Positive` is only reported from the spectrum of `j2(T)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::certify::{form_value, minimize_rank_constrained, SearchBudget};
use crate::error::{Error, Result};
use crate::maps::LinearMap;
use crate::numerics::{hermitian_eig, CMatrix, CVector, Tolerance, C64};
use crate::random::{derive_seed, rng_from_seed, unit_vector};
use crate::schmidt::{schmidt_decompose, schmidt_rank};

/// Tolerance used for verdicts unless the caller overrides it.
pub const VERDICT_TOL: Tolerance = Tolerance {
    abs_eps: 1e-9,
    rel_eps: 1e-10,
};

/// Cap on `k * max(n, m)` for [`ancilla_crosscheck`].
pub const ANCILLA_DIM_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    K(usize),
    Complete,
}

impl Serialize for Query {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Query::K(k) => s.serialize_u64(*k as u64),
            Query::Complete => s.serialize_str("complete"),
        }
    }
}

impl<'de> Deserialize<'de> for Query {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            K(usize),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::K(k) => Ok(Query::K(k)),
            Raw::Word(w) if w == "complete" => Ok(Query::Complete),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("bad query `{w}`"))),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::K(k) => write!(f, "{k}-positive"),
            Query::Complete => f.write_str("completely positive"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Positive,
    Violated,
    Inconclusive,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Eigendecomposition of `j2(T)`.
    ChoiSpectrum,
    /// Rank-constrained search over Schmidt rank `<= k`.
    RankConstrainedSearch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictCertificate {
    pub vector: CVector,
    pub value: f64,
    pub schmidt_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    pub query: Query,
    pub status: Status,
    pub method: Method,
    pub certificate: Option<VerdictCertificate>,
    /// Lowest form value found; for spectral verdicts, the lowest Choi eigenvalue.
    pub best_value: f64,
}

impl PositivityVerdict {
    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }
}

pub fn hermiticity_defect_j2(t: &LinearMap) -> f64 {
    t.choi2().hermiticity_defect()
}

pub fn is_hermiticity_preserving(t: &LinearMap, tol: &Tolerance) -> bool {
    hermiticity_defect_j2(t) <= tol.abs_eps
}

fn require_hermiticity_preserving(t: &LinearMap, tol: &Tolerance) -> Result<()> {
    let defect = hermiticity_defect_j2(t);
    if defect > tol.abs_eps {
        return Err(Error::NotHermiticityPreserving { defect });
    }
    Ok(())
}

/// `<j2(T) v, v>` as a real number.
pub fn quadratic_form(t: &LinearMap, v: &CVector) -> Result<f64> {
    let c = t.choi2();
    if v.dim() != c.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of dim {} for a {}x{} Choi matrix",
            v.dim(),
            c.rows(),
            c.cols()
        )));
    }
    let scale = c.max_abs().max(1.0);
    require_hermiticity_preserving(
        t,
        &Tolerance::uniform(Tolerance::default().threshold(scale)),
    )?;
    let z = c.expectation(v)?;
    let residue_cap = 1e-10 * v.norm_sqr() * c.frobenius_norm().max(1.0);
    if z.im.abs() > residue_cap {
        return Err(Error::NotHermiticityPreserving { defect: z.im.abs() });
    }
    Ok(z.re)
}

fn spectral_verdict(t: &LinearMap, query: Query, tol: &Tolerance) -> Result<PositivityVerdict> {
    let eig = hermitian_eig(t.choi2(), tol)?;
    let lowest = eig.min();
    if lowest >= -tol.abs_eps {
        return Ok(PositivityVerdict {
            query,
            status: Status::Positive,
            method: Method::ChoiSpectrum,
            certificate: None,
            best_value: lowest,
        });
    }
    let vector = eig.min_vector();
    let value = form_value(t.choi2(), &vector);
    let schmidt_rank = schmidt_rank(&vector, t.dim_in(), t.dim_out(), &Tolerance::default())?;
    Ok(PositivityVerdict {
        query,
        status: Status::Violated,
        method: Method::ChoiSpectrum,
        certificate: Some(VerdictCertificate {
            vector,
            value,
            schmidt_rank,
        }),
        best_value: value,
    })
}

/// Complete positivity via `j2(T) >= 0`.
pub fn is_completely_positive(t: &LinearMap, tol: &Tolerance) -> Result<PositivityVerdict> {
    require_hermiticity_preserving(t, tol)?;
    spectral_verdict(t, Query::Complete, tol)
}

/// k-positivity verdict.
///
/// * `k >= min(n, m)`: exact, from the spectrum of `j2(T)`.
/// * `j2(T) >= 0`: `Positive` for every `k`.
/// * otherwise: searches Schmidt ranks `1..=k` (seed `derive_seed(seed, j)`
///   for rank `j`) and reports `Violated` if any value falls below
///   `-tol.abs_eps`, else `Inconclusive`.
pub fn is_k_positive(
    t: &LinearMap,
    k: usize,
    tol: &Tolerance,
    budget: &SearchBudget,
    seed: u64,
) -> Result<PositivityVerdict> {
    let (n, m) = (t.dim_in(), t.dim_out());
    let full = n.min(m);
    if k == 0 {
        return Err(Error::BadRank { k, max: full });
    }
    require_hermiticity_preserving(t, tol)?;
    let query = Query::K(k);
    let spectral = spectral_verdict(t, query, tol)?;
    if k >= full || spectral.status == Status::Positive {
        return Ok(spectral);
    }

    let mut best: Option<crate::certify::Certificate> = None;
    for rank in 1..=k {
        let c = minimize_rank_constrained(
            t.choi2(),
            n,
            m,
            rank,
            budget,
            derive_seed(seed, rank as u64),
        )?;
        if best.as_ref().is_none_or(|b| c.value < b.value) {
            best = Some(c);
        }
    }
    let best = best.expect("k >= 1");
    if best.value < -tol.abs_eps {
        Ok(PositivityVerdict {
            query,
            status: Status::Violated,
            method: Method::RankConstrainedSearch,
            best_value: best.value,
            certificate: Some(VerdictCertificate {
                value: best.value,
                schmidt_rank: best.rank,
                vector: best.vector,
            }),
        })
    } else {
        Ok(PositivityVerdict {
            query,
            status: Status::Inconclusive,
            method: Method::RankConstrainedSearch,
            certificate: None,
            best_value: best.value,
        })
    }
}

/// Summary of feeding random pure states through `1_k ⊗ T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub k: usize,
    pub trials: usize,
    /// Lowest eigenvalue of `(1_k ⊗ T)(x x*)` over the random inputs.
    pub min_eigenvalue: f64,
}

fn check_ancilla_dims(t: &LinearMap, k: usize) -> Result<()> {
    let dim = k * t.dim_in().max(t.dim_out());
    if dim > ANCILLA_DIM_CAP {
        return Err(Error::DimensionTooLarge {
            dim,
            cap: ANCILLA_DIM_CAP,
        });
    }
    if k == 0 {
        return Err(Error::BadRank {
            k,
            max: t.dim_in().min(t.dim_out()),
        });
    }
    Ok(())
}

fn lowest_output_eigenvalue(t: &LinearMap, k: usize, input: &CMatrix) -> Result<f64> {
    let out = t.apply_extended(k, input)?;
    let tol = Tolerance::uniform(1e-9 * out.max_abs().max(1.0));
    if out.hermiticity_defect() > tol.abs_eps {
        return Err(Error::NotHermiticityPreserving {
            defect: out.hermiticity_defect(),
        });
    }
    Ok(hermitian_eig(&out, &tol)?.min())
}

/// Independent check of k-positivity from its definition: samples random unit
/// `x` in `C^k ⊗ C^n` and records the lowest eigenvalue of `(1_k ⊗ T)(x x*)`.
pub fn ancilla_crosscheck(
    t: &LinearMap,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<CrosscheckReport> {
    check_ancilla_dims(t, k)?;
    let mut rng = rng_from_seed(seed);
    let mut lowest = f64::INFINITY;
    for _ in 0..trials {
        let x = unit_vector(&mut rng, k * t.dim_in());
        lowest = lowest.min(lowest_output_eigenvalue(t, k, &x.outer(&x))?);
    }
    Ok(CrosscheckReport {
        k,
        trials,
        min_eigenvalue: lowest,
    })
}

/// Turns a vector `v = sum_p c_p a_p ⊗ b_p` of Schmidt rank `<= k` into the
/// ancilla input `x = sum_p f_p ⊗ c_p conj(a_p)` and test vector
/// `y = sum_p f_p ⊗ b_p`, for which `<(1_k ⊗ T)(x x*) y, y> = <j2(T) v, v>`.
pub fn certificate_ancilla_input(
    v: &CVector,
    n: usize,
    m: usize,
    k: usize,
) -> Result<(CMatrix, CVector)> {
    let form = schmidt_decompose(v, n, m, &Tolerance::default())?;
    if form.rank() > k {
        return Err(Error::BadRank {
            k: form.rank(),
            max: k,
        });
    }
    let mut x = CVector::zeros(k * n);
    let mut y = CVector::zeros(k * m);
    for (p, ((c, a), b)) in form
        .coefficients
        .iter()
        .zip(&form.left)
        .zip(&form.right)
        .enumerate()
    {
        for i in 0..n {
            x[p * n + i] = a[i].conj() * C64::new(*c, 0.0);
        }
        for q in 0..m {
            y[p * m + q] = b[q];
        }
    }
    Ok((x.outer(&x), y))
}

/// Lowest eigenvalue of `(1_k ⊗ T)` applied to the input induced by `v`.
pub fn certificate_ancilla_eigenvalue(t: &LinearMap, v: &CVector, k: usize) -> Result<f64> {
    check_ancilla_dims(t, k)?;
    let (input, _) = certificate_ancilla_input(v, t.dim_in(), t.dim_out(), k)?;
    lowest_output_eigenvalue(t, k, &input)
}

/// Outcome of checking a verdict against [`ancilla_crosscheck`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckOutcome {
    pub report: CrosscheckReport,
    /// Lowest output eigenvalue on the certificate-induced input, if any.
    pub certificate_eigenvalue: Option<f64>,
    pub consistent: bool,
}

/// A `Positive` verdict is contradicted by any random input with a negative
/// output eigenvalue; a `Violated` verdict is contradicted when its own
/// certificate does not produce one. `Inconclusive` claims nothing.
pub fn crosscheck_verdict(
    t: &LinearMap,
    verdict: &PositivityVerdict,
    trials: usize,
    seed: u64,
) -> Result<CrosscheckOutcome> {
    let k = match verdict.query {
        Query::K(k) => k,
        Query::Complete => t.dim_in().min(t.dim_out()),
    };
    let slack = 1e-9 * t.choi2().max_abs().max(1.0);
    let report = ancilla_crosscheck(t, k, trials, seed)?;
    let certificate_eigenvalue = verdict
        .certificate
        .as_ref()
        .map(|c| certificate_ancilla_eigenvalue(t, &c.vector, k))
        .transpose()?;
    let consistent = match verdict.status {
        Status::Positive => report.min_eigenvalue >= -slack,
        Status::Violated => certificate_eigenvalue.is_some_and(|e| e < -slack),
        Status::Inconclusive => true,
    };
    Ok(CrosscheckOutcome {
        report,
        certificate_eigenvalue,
        consistent,
    })
}
