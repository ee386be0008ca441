//! Schmidt decomposition of vectors in `C^n ⊗ C^m`.
//!
//! A vector `v` with entries `v[i*m + j]` is identified with the `n x m`
//! matrix `M[i, j]`; the SVD `M = U S V*` gives
//! `v = sum_k s_k u_k ⊗ conj(v_k)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{
    hermitian_eig, reshape_matrix_to_vector, reshape_vector_to_matrix, svd, CMatrix, CVector,
    Tolerance, C64,
};
use crate::random::{gaussian, isometry, rng_from_seed};

#[derive(Clone, Debug)]
pub struct SchmidtForm {
    pub n: usize,
    pub m: usize,
    /// Positive, descending.
    pub coefficients: Vec<f64>,
    /// Orthonormal vectors of `C^n`.
    pub left: Vec<CVector>,
    /// Orthonormal vectors of `C^m`.
    pub right: Vec<CVector>,
}

impl SchmidtForm {
    /// The Schmidt number.
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// `sum_k c_k left_k ⊗ right_k`.
    pub fn reconstruct(&self) -> CVector {
        let mut v = CVector::zeros(self.n * self.m);
        for ((c, a), b) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            v = &v + &a.tensor(b).scale(C64::new(*c, 0.0));
        }
        v
    }
}

fn check_dims(v: &CVector, n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 || v.dim() != n * m {
        return Err(Error::DimensionMismatch(format!(
            "vector of dim {} is not in C^{n} ⊗ C^{m}",
            v.dim()
        )));
    }
    Ok(())
}

/// Number of `values` above `tol.abs_eps + tol.rel_eps * max(values)`.
pub(crate) fn numerical_rank(values: &[f64], tol: &Tolerance) -> usize {
    let top = values.iter().copied().fold(0.0, f64::max);
    let cut = tol.threshold(top);
    values.iter().filter(|&&s| s > cut).count()
}

pub fn schmidt_decompose(v: &CVector, n: usize, m: usize, tol: &Tolerance) -> Result<SchmidtForm> {
    check_dims(v, n, m)?;
    if v.norm() <= tol.abs_eps {
        return Err(Error::ZeroVector);
    }
    let dec = svd(&reshape_vector_to_matrix(v, n, m)?)?;
    let s = numerical_rank(&dec.singular_values, tol);
    Ok(SchmidtForm {
        n,
        m,
        coefficients: dec.singular_values[..s].to_vec(),
        left: (0..s).map(|k| dec.u.column(k)).collect(),
        right: (0..s).map(|k| dec.v.column(k).conj()).collect(),
    })
}

pub fn schmidt_rank(v: &CVector, n: usize, m: usize, tol: &Tolerance) -> Result<usize> {
    check_dims(v, n, m)?;
    if v.norm() <= tol.abs_eps {
        return Err(Error::ZeroVector);
    }
    let dec = svd(&reshape_vector_to_matrix(v, n, m)?)?;
    Ok(numerical_rank(&dec.singular_values, tol))
}

/// `Tr_B |v><v|` as an `n x n` matrix.
pub fn reduced_density_matrix(v: &CVector, n: usize, m: usize) -> Result<CMatrix> {
    check_dims(v, n, m)?;
    let a = reshape_vector_to_matrix(v, n, m)?;
    Ok(&a * &a.adjoint())
}

/// Rank of `Tr_B |v><v|`, with the tolerance rule applied to its eigenvalues.
pub fn reduced_density_rank(v: &CVector, n: usize, m: usize, tol: &Tolerance) -> Result<usize> {
    if v.norm() <= tol.abs_eps {
        return Err(Error::ZeroVector);
    }
    let rho = reduced_density_matrix(v, n, m)?;
    let eig = hermitian_eig(&rho, &Tolerance::uniform(1e-9 * rho.max_abs().max(1.0)))?;
    Ok(numerical_rank(&eig.eigenvalues, tol))
}

/// `sum_p xs[p] ⊗ ys[p]`.
pub fn build_from_systems(xs: &[CVector], ys: &[CVector]) -> Result<CVector> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyInput("vector systems must be nonempty".into()));
    }
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} left vectors vs {} right vectors",
            xs.len(),
            ys.len()
        )));
    }
    let (n, m) = (xs[0].dim(), ys[0].dim());
    if xs.iter().any(|x| x.dim() != n) || ys.iter().any(|y| y.dim() != m) {
        return Err(Error::DimensionMismatch(
            "vector systems of mixed dimension".into(),
        ));
    }
    Ok(xs
        .iter()
        .zip(ys)
        .fold(CVector::zeros(n * m), |acc, (x, y)| &acc + &x.tensor(y)))
}

/// Random unit vector of Schmidt rank exactly `k` (almost surely).
///
/// Draws `G1 diag(g) G2^t` with `G1`, `G2` random isometries of widths `k`
/// and `g` absolute standard normals, then normalizes.
pub fn sample_rank_k(n: usize, m: usize, k: usize, seed: u64) -> Result<CVector> {
    let mut rng = rng_from_seed(seed);
    sample_rank_k_with(&mut rng, n, m, k)
}

pub fn sample_rank_k_with(rng: &mut impl Rng, n: usize, m: usize, k: usize) -> Result<CVector> {
    let max = n.min(m);
    if k == 0 || k > max {
        return Err(Error::BadRank { k, max });
    }
    loop {
        let left = isometry(rng, n, k);
        let right = isometry(rng, m, k);
        let weights: Vec<f64> = (0..k).map(|_| gaussian(rng).abs()).collect();
        let a = CMatrix::from_fn(n, m, |i, j| {
            (0..k)
                .map(|l| left[(i, l)] * weights[l] * right[(j, l)])
                .sum()
        });
        if let Some(v) = reshape_matrix_to_vector(&a).normalized() {
            return Ok(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gaussian_vector, unit_vector};

    fn e(dim: usize, i: usize) -> CVector {
        CVector::basis(dim, i)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn product_basis_vector() {
        let f = schmidt_decompose(&e(2, 0).tensor(&e(2, 0)), 2, 2, &tol()).unwrap();
        assert_eq!(f.rank(), 1);
        assert!((f.coefficients[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn maximally_entangled_vector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = CVector::from_real(&[h, 0.0, 0.0, h]);
        let f = schmidt_decompose(&v, 2, 2, &tol()).unwrap();
        assert_eq!(f.rank(), 2);
        for c in &f.coefficients {
            assert!((c - h).abs() < 1e-15);
        }
    }

    #[test]
    fn singlet_has_schmidt_number_two() {
        let v = CVector::from_real(&[0.0, 1.0, -1.0, 0.0]);
        let f = schmidt_decompose(&v, 2, 2, &tol()).unwrap();
        assert_eq!(f.rank(), 2);
        for c in &f.coefficients {
            assert!((c - 1.0).abs() < 1e-14);
        }
        assert!(f.reconstruct().max_abs_diff(&v) < 1e-14);
    }

    #[test]
    fn zero_and_mismatched_inputs() {
        assert_eq!(
            schmidt_decompose(&CVector::zeros(4), 2, 2, &tol()).unwrap_err(),
            Error::ZeroVector
        );
        assert!(matches!(
            schmidt_rank(&CVector::zeros(5), 2, 2, &tol()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rank_examples() {
        let mut rng = rng_from_seed(21);
        let x = gaussian_vector(&mut rng, 3);
        let y = gaussian_vector(&mut rng, 4);
        assert_eq!(schmidt_rank(&x.tensor(&y), 3, 4, &tol()).unwrap(), 1);

        let mut diag = CVector::zeros(9);
        for i in 0..3 {
            diag[i * 3 + i] = C64::new(1.0, 0.0);
        }
        assert_eq!(schmidt_rank(&diag, 3, 3, &tol()).unwrap(), 3);

        let xs = [gaussian_vector(&mut rng, 3), gaussian_vector(&mut rng, 3)];
        let ys = [gaussian_vector(&mut rng, 3), gaussian_vector(&mut rng, 3)];
        let v = build_from_systems(&xs, &ys).unwrap();
        assert!(schmidt_rank(&v, 3, 3, &tol()).unwrap() <= 2);
    }

    #[test]
    fn build_examples() {
        let v = build_from_systems(&[e(2, 0)], &[e(2, 1)]).unwrap();
        assert_eq!(v, e(2, 0).tensor(&e(2, 1)));
        assert_eq!(schmidt_rank(&v, 2, 2, &tol()).unwrap(), 1);

        let minus = e(2, 0).scale(C64::new(-1.0, 0.0));
        let v = build_from_systems(&[e(2, 0), e(2, 1)], &[e(2, 1), minus]).unwrap();
        assert_eq!(v, CVector::from_real(&[0.0, 1.0, -1.0, 0.0]));
        assert_eq!(schmidt_rank(&v, 2, 2, &tol()).unwrap(), 2);

        let v = build_from_systems(&[e(2, 0), e(2, 0)], &[e(2, 0), e(2, 1)]).unwrap();
        assert_eq!(v, CVector::from_real(&[1.0, 1.0, 0.0, 0.0]));
        assert_eq!(schmidt_rank(&v, 2, 2, &tol()).unwrap(), 1);
    }

    #[test]
    fn build_rejects_bad_systems() {
        assert!(matches!(
            build_from_systems(&[], &[]),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            build_from_systems(&[e(2, 0)], &[e(2, 0), e(2, 1)]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            build_from_systems(&[e(2, 0), e(3, 0)], &[e(2, 0), e(2, 1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn sampler_examples() {
        let v = sample_rank_k(3, 4, 1, 5).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-12);
        assert_eq!(schmidt_rank(&v, 3, 4, &tol()).unwrap(), 1);

        let v = sample_rank_k(3, 3, 3, 6).unwrap();
        assert_eq!(schmidt_rank(&v, 3, 3, &tol()).unwrap(), 3);

        assert_eq!(
            sample_rank_k(4, 3, 2, 99).unwrap(),
            sample_rank_k(4, 3, 2, 99).unwrap()
        );
        assert!(matches!(
            sample_rank_k(2, 3, 3, 0),
            Err(Error::BadRank { k: 3, max: 2 })
        ));
        assert!(matches!(
            sample_rank_k(2, 3, 0, 0),
            Err(Error::BadRank { .. })
        ));
    }

    #[test]
    fn reduced_density_rank_matches_schmidt_rank() {
        let mut rng = rng_from_seed(22);
        for k in 1..=3 {
            let v = sample_rank_k_with(&mut rng, 3, 4, k).unwrap();
            assert_eq!(reduced_density_rank(&v, 3, 4, &tol()).unwrap(), k);
        }
        let v = unit_vector(&mut rng, 12);
        assert_eq!(reduced_density_rank(&v, 4, 3, &tol()).unwrap(), 3);
    }
}
