//! Test-only reference implementations. These deliberately avoid the crate's
//! Choi-matrix machinery so they can serve as independent oracles.
#![allow(dead_code)]

use kpositivity::numerics::{CMatrix, CVector, C64};
use kpositivity::random::{gaussian_matrix, rng_from_seed, SeededRng};
use kpositivity::{KrausSet, LinearMap};

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Kronecker product written from the entry formula, no shared helpers.
pub fn naive_kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut rows = vec![vec![c(0.0); ac * bc]; ar * br];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = a[(i / br, j / bc)] * b[(i % br, j % bc)];
        }
    }
    CMatrix::from_rows(&rows)
}

pub fn swap(n: usize) -> CMatrix {
    CMatrix::from_fn(n * n, n * n, |r, s| {
        let (i, j) = (r / n, r % n);
        if s == j * n + i {
            c(1.0)
        } else {
            c(0.0)
        }
    })
}

pub fn omega(n: usize) -> CVector {
    let mut v = CVector::zeros(n * n);
    for i in 0..n {
        v[i * n + i] = c(1.0);
    }
    v
}

/// `sum_ij E_ji ⊗ action(E_ij)` evaluated through a closure.
pub fn j1_by_sum(n: usize, m: usize, action: &dyn Fn(&CMatrix) -> CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            let e = CMatrix::unit(n, n, i, j);
            out = &out + &naive_kron(&e.adjoint(), &action(&e));
        }
    }
    out
}

/// `sum_ij E_ij ⊗ action(E_ij)` evaluated through a closure.
pub fn j2_by_sum(n: usize, m: usize, action: &dyn Fn(&CMatrix) -> CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            let e = CMatrix::unit(n, n, i, j);
            out = &out + &naive_kron(&e, &action(&e));
        }
    }
    out
}

/// `A -> sum K A K*` evaluated directly.
pub fn kraus_action(ops: &[CMatrix]) -> impl Fn(&CMatrix) -> CMatrix + '_ {
    move |a| {
        let m = ops[0].rows();
        ops.iter().fold(CMatrix::zeros(m, m), |acc, k| {
            &acc + &(&(k * a) * &k.adjoint())
        })
    }
}

pub fn random_kraus_map(rng: &mut SeededRng, n: usize, m: usize, count: usize) -> LinearMap {
    let ops = (0..count).map(|_| gaussian_matrix(rng, m, n)).collect();
    LinearMap::from_kraus(&KrausSet::new(ops).unwrap())
}

/// Map with an arbitrary complex Choi matrix.
pub fn random_generic_map(rng: &mut SeededRng, n: usize, m: usize) -> LinearMap {
    LinearMap::from_choi2(gaussian_matrix(rng, n * m, n * m), n, m).unwrap()
}

/// Hermiticity-preserving map whose Choi matrix is `G G* / d - shift I`, with
/// the shift drawn so that roughly half of the ensemble is completely positive.
pub fn random_hp_map(rng: &mut SeededRng, n: usize, m: usize) -> LinearMap {
    use rand::Rng;
    let d = n * m;
    let g = gaussian_matrix(rng, d, d);
    let mut choi = (&g * &g.adjoint()).scale(c(1.0 / d as f64));
    let shift: f64 = rng.random_range(-0.05..0.25);
    for i in 0..d {
        choi[(i, i)] -= c(shift);
    }
    LinearMap::from_choi2(choi, n, m).unwrap()
}

/// Smallest eigenvalue from nalgebra, a backend the crate itself does not use.
pub fn smallest_eigenvalue(h: &CMatrix) -> f64 {
    spectrum(h)[h.rows() - 1]
}

/// Eigenvalues from nalgebra, descending.
pub fn spectrum(h: &CMatrix) -> Vec<f64> {
    let d = h.rows();
    let m = nalgebra::DMatrix::from_fn(d, d, |i, j| h[(i, j)]);
    let mut e: Vec<f64> = nalgebra::SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    e.sort_by(|a, b| b.total_cmp(a));
    e
}

/// Partial trace over the second factor of `v v*`.
pub fn partial_trace_b(v: &CVector, n: usize, m: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, k| {
        (0..m).map(|j| v[i * m + j] * v[k * m + j].conj()).sum()
    })
}

pub fn rng(seed: u64) -> SeededRng {
    rng_from_seed(seed)
}
