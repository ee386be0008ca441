//! Search for vectors of Schmidt rank at most `k` on which a hermitian form
//! is negative.
//!
//! The minimizer is a projected gradient iteration on the Rayleigh quotient
//! `rho(v) = <w v, v>` over unit vectors:
//!
//! ```text
//! v' = normalize(P_k(v - eta (w v - rho(v) v)))
//! ```
//!
//! where `P_k` reshapes `v` to an `n x m` matrix and keeps its top `k`
//! singular triplets. `eta` starts at `1 / (lambda_max - lambda_min)` and is
//! halved until the step does not increase `rho`, so every accepted iterate
//! is feasible and the objective is non-increasing.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{
    hermitian_eig, reshape_matrix_to_vector, reshape_vector_to_matrix, svd, CMatrix, CVector,
    Tolerance, C64,
};
use crate::random::derive_seed;
use crate::schmidt::{sample_rank_k, sample_rank_k_with, schmidt_rank};

/// Step-size rule for the projected iteration.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// `eta = 1 / (lambda_max - lambda_min + eps)` with halving backtracking.
    Spectral,
    /// Fixed initial `eta` with halving backtracking.
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SearchBudget {
    pub restarts: usize,
    pub max_iterations: usize,
    pub step_rule: StepRule,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iterations: 500,
            step_rule: StepRule::Spectral,
        }
    }
}

impl SearchBudget {
    pub fn new(restarts: usize, max_iterations: usize) -> Self {
        assert!(
            restarts >= 1 && max_iterations >= 1,
            "budget must be positive"
        );
        Self {
            restarts,
            max_iterations,
            step_rule: StepRule::Spectral,
        }
    }
}

/// One iterate of the search.
#[derive(Clone, Debug)]
pub struct SearchState {
    pub v: CVector,
    pub value: f64,
    pub iteration: usize,
}

/// Best vector found by a search.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub vector: CVector,
    pub value: f64,
    pub rank: usize,
    pub restarts_used: usize,
    pub iterations_used: usize,
}

/// Consecutive low-improvement iterations before a run is declared converged.
const STALL_WINDOW: usize = 10;
const STALL_IMPROVEMENT: f64 = 1e-12;
const MAX_HALVINGS: usize = 40;

/// `Re <w v, v>` without any hermiticity bookkeeping.
pub fn form_value(w: &CMatrix, v: &CVector) -> f64 {
    w.mul_vec_unchecked(v).inner(v).re
}

/// Nearest unit vector of Schmidt rank `<= k` (truncated SVD, renormalized).
pub fn project_rank(v: &CVector, n: usize, m: usize, k: usize) -> Result<CVector> {
    let a = reshape_vector_to_matrix(v, n, m)?;
    let dec = svd(&a)?;
    let truncated = reshape_matrix_to_vector(&dec.reconstruct(k));
    truncated
        .normalized()
        .ok_or_else(|| Error::BadStart("projection onto rank <= k vanished".into()))
}

fn validate(w: &CMatrix, n: usize, m: usize, k: usize) -> Result<()> {
    if n == 0 || m == 0 || w.shape() != (n * m, n * m) {
        return Err(Error::DimensionMismatch(format!(
            "form is {}x{}, expected {d}x{d}",
            w.rows(),
            w.cols(),
            d = n * m
        )));
    }
    let defect = w.hermiticity_defect();
    if defect > 1e-10 * w.max_abs().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    let max = n.min(m);
    if k == 0 || k > max {
        return Err(Error::BadRank { k, max });
    }
    Ok(())
}

fn eig_tol(w: &CMatrix) -> Tolerance {
    Tolerance::uniform(1e-10 * w.max_abs().max(1.0))
}

/// The projected iteration, exposed step by step.
#[derive(Clone, Debug)]
pub struct RankConstrainedDescent<'a> {
    w: &'a CMatrix,
    n: usize,
    m: usize,
    k: usize,
    eta0: f64,
    state: SearchState,
    stall: usize,
    improvement_floor: f64,
}

impl<'a> RankConstrainedDescent<'a> {
    /// Starts at `v0`, which is normalized and projected to rank `<= k`.
    pub fn new(
        w: &'a CMatrix,
        n: usize,
        m: usize,
        k: usize,
        v0: &CVector,
        step_rule: StepRule,
    ) -> Result<Self> {
        validate(w, n, m, k)?;
        let eig = hermitian_eig(w, &eig_tol(w))?;
        Self::with_spectrum(w, n, m, k, v0, step_rule, eig.max(), eig.min())
    }

    #[allow(clippy::too_many_arguments)]
    fn with_spectrum(
        w: &'a CMatrix,
        n: usize,
        m: usize,
        k: usize,
        v0: &CVector,
        step_rule: StepRule,
        lambda_max: f64,
        lambda_min: f64,
    ) -> Result<Self> {
        if v0.dim() != n * m {
            return Err(Error::BadStart(format!(
                "start vector has dim {}, expected {}",
                v0.dim(),
                n * m
            )));
        }
        if v0.norm() == 0.0 || !v0.norm().is_finite() {
            return Err(Error::BadStart("start vector is zero".into()));
        }
        let spread = lambda_max - lambda_min;
        let scale = lambda_max.abs().max(lambda_min.abs()).max(1.0);
        let eta0 = match step_rule {
            StepRule::Spectral => 1.0 / (spread + 1e-12 * scale),
            StepRule::Fixed(eta) => eta,
        };
        let v = project_rank(v0, n, m, k)?;
        let value = form_value(w, &v);
        Ok(Self {
            w,
            n,
            m,
            k,
            eta0,
            state: SearchState {
                v,
                value,
                iteration: 0,
            },
            stall: 0,
            improvement_floor: STALL_IMPROVEMENT * scale,
        })
    }

    pub fn state(&self) -> &SearchState {
        &self.state
    }

    pub fn converged(&self) -> bool {
        self.stall >= STALL_WINDOW
    }

    /// One backtracking step. The state is left unchanged if no step size
    /// decreases the objective.
    pub fn step(&mut self) -> Result<&SearchState> {
        let v = &self.state.v;
        let rho = self.state.value;
        let wv = self.w.mul_vec_unchecked(v);
        let grad = &wv - &v.scale(C64::new(rho, 0.0));

        let mut eta = self.eta0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial = v - &grad.scale(C64::new(eta, 0.0));
            if let Ok(candidate) = project_rank(&trial, self.n, self.m, self.k) {
                let value = form_value(self.w, &candidate);
                if value <= rho {
                    accepted = Some((candidate, value));
                    break;
                }
            }
            eta *= 0.5;
        }

        let improvement = match accepted {
            Some((candidate, value)) => {
                let gain = rho - value;
                self.state.v = candidate;
                self.state.value = value;
                gain
            }
            None => 0.0,
        };
        self.state.iteration += 1;
        if improvement < self.improvement_floor {
            self.stall += 1;
        } else {
            self.stall = 0;
        }
        Ok(&self.state)
    }

    /// Iterates until convergence or `max_iterations`.
    pub fn run(mut self, max_iterations: usize) -> Result<SearchState> {
        while self.state.iteration < max_iterations && !self.converged() {
            self.step()?;
        }
        Ok(self.state)
    }
}

fn finish(
    state: SearchState,
    n: usize,
    m: usize,
    w: &CMatrix,
    restarts_used: usize,
    iterations_used: usize,
) -> Result<Certificate> {
    let rank = schmidt_rank(&state.v, n, m, &Tolerance::default())?;
    Ok(Certificate {
        value: form_value(w, &state.v),
        vector: state.v,
        rank,
        restarts_used,
        iterations_used,
    })
}

/// Lowest value of `<w v, v>` found over unit vectors of Schmidt rank `<= k`.
///
/// Restart 0 starts from the rank-`k` truncation of the lowest eigenvector
/// of `w`; restart `r >= 1` starts from `sample_rank_k` with seed
/// `derive_seed(seed, r)`. Restarts run in parallel and the result is the
/// lowest value, ties going to the lowest restart index.
pub fn minimize_rank_constrained(
    w: &CMatrix,
    n: usize,
    m: usize,
    k: usize,
    budget: &SearchBudget,
    seed: u64,
) -> Result<Certificate> {
    validate(w, n, m, k)?;
    let restarts = budget.restarts.max(1);
    let max_iterations = budget.max_iterations.max(1);
    let eig = hermitian_eig(w, &eig_tol(w))?;
    let (lambda_max, lambda_min) = (eig.max(), eig.min());
    let spectral_start = eig.min_vector();

    let runs: Vec<Result<SearchState>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let v0 = if r == 0 {
                spectral_start.clone()
            } else {
                sample_rank_k(n, m, k, derive_seed(seed, r as u64))?
            };
            RankConstrainedDescent::with_spectrum(
                w,
                n,
                m,
                k,
                &v0,
                budget.step_rule,
                lambda_max,
                lambda_min,
            )?
            .run(max_iterations)
        })
        .collect();

    let mut best: Option<SearchState> = None;
    let mut iterations = 0;
    for run in runs {
        let state = run?;
        iterations += state.iteration;
        if best.as_ref().is_none_or(|b| state.value < b.value) {
            best = Some(state);
        }
    }
    finish(
        best.expect("at least one restart"),
        n,
        m,
        w,
        restarts,
        iterations,
    )
}

/// Single-start refinement of a candidate of Schmidt rank `<= k`.
pub fn polish(
    w: &CMatrix,
    v0: &CVector,
    n: usize,
    m: usize,
    k: usize,
    tol: &Tolerance,
) -> Result<Certificate> {
    polish_with_budget(w, v0, n, m, k, tol, &SearchBudget::default())
}

pub fn polish_with_budget(
    w: &CMatrix,
    v0: &CVector,
    n: usize,
    m: usize,
    k: usize,
    tol: &Tolerance,
    budget: &SearchBudget,
) -> Result<Certificate> {
    validate(w, n, m, k)?;
    if v0.dim() != n * m {
        return Err(Error::BadStart(format!(
            "start vector has dim {}",
            v0.dim()
        )));
    }
    if v0.norm() <= tol.abs_eps {
        return Err(Error::BadStart("start vector is zero".into()));
    }
    let rank = schmidt_rank(v0, n, m, tol)?;
    if rank > k {
        return Err(Error::BadStart(format!(
            "start vector has Schmidt rank {rank} > {k}"
        )));
    }
    let state = RankConstrainedDescent::new(w, n, m, k, v0, budget.step_rule)?
        .run(budget.max_iterations.max(1))?;
    let iterations = state.iteration;
    finish(state, n, m, w, 1, iterations)
}

/// Minimum of `<w v, v>` over `samples` random unit vectors of Schmidt rank `k`.
pub fn brute_force_min(
    w: &CMatrix,
    n: usize,
    m: usize,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    validate(w, n, m, k)?;
    let mut rng = crate::random::rng_from_seed(seed);
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let v = sample_rank_k_with(&mut rng, n, m, k)?;
        best = best.min(form_value(w, &v));
    }
    Ok(best)
}
