//! Seeded random generators for vectors, matrices, unitaries and maps.
//!
//! All samplers take an explicit RNG so callers control reproducibility.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numerics::{orthonormal_columns, CMatrix, CVector, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Child seed number `index` of `master` (splitmix64 finalizer).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Complex normal with independent standard normal real and imaginary parts.
pub fn gaussian_complex(rng: &mut impl Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

pub fn gaussian_vector(rng: &mut impl Rng, dim: usize) -> CVector {
    CVector::from((0..dim).map(|_| gaussian_complex(rng)).collect::<Vec<_>>())
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

pub fn unit_vector(rng: &mut impl Rng, dim: usize) -> CVector {
    loop {
        if let Some(v) = gaussian_vector(rng, dim).normalized() {
            return v;
        }
    }
}

/// `n x k` matrix with orthonormal columns.
pub fn isometry(rng: &mut impl Rng, n: usize, k: usize) -> CMatrix {
    orthonormal_columns(&gaussian_matrix(rng, n, k))
}

pub fn unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    isometry(rng, n, n)
}

/// Real orthogonal matrix (QR of a real Gaussian matrix).
pub fn orthogonal(rng: &mut impl Rng, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| C64::new(gaussian(rng), 0.0));
    let q = orthonormal_columns(&g);
    // QR of a real matrix is real up to roundoff; drop the residue
    q.map(|z| C64::new(z.re, 0.0))
}

/// GUE-style hermitian matrix `(G + G*) / 2`.
pub fn hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let g = gaussian_matrix(rng, n, n);
    (&g + &g.adjoint()).scale(C64::new(0.5, 0.0))
}

/// Positive semidefinite matrix `G G*` with `G` of shape `n x rank`.
pub fn psd(rng: &mut impl Rng, n: usize, rank: usize) -> CMatrix {
    let g = gaussian_matrix(rng, n, rank);
    &g * &g.adjoint()
}
