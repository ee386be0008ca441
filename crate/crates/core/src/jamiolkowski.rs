//! The two Jamiołkowski transforms.
//!
//! `j1(T) = sum_i E_i* ⊗ T(E_i)` over any orthonormal basis of `C^{n x n}`,
//! and `j2(T) = sum_ij E_ij ⊗ T(E_ij)` in the matrix-unit basis without the
//! adjoint. They differ by a partial transpose on the first factor. Only
//! `j2` carries the k-positivity characterization; `j1` is kept for the
//! isometry and hermiticity checks and as the counterexample.

use crate::error::{Error, Result};
use crate::maps::LinearMap;
use crate::numerics::{frobenius_inner, CMatrix, CVector, C64, ZERO};

/// Matrix units `E_ij` of `C^{n x n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylBasis {
    n: usize,
}

impl WeylBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        Self { n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn element(&self, i: usize, j: usize) -> CMatrix {
        CMatrix::unit(self.n, self.n, i, j)
    }

    /// `((i, j), E_ij)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), CMatrix)> + '_ {
        (0..self.n)
            .flat_map(move |i| (0..self.n).map(move |j| (i, j)))
            .map(move |(i, j)| ((i, j), self.element(i, j)))
    }
}

/// Orthonormal basis `f_i = U e_i` of `C^n` with operator basis `F_ij = f_i f_j*`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    u: CMatrix,
}

impl BasisChange {
    pub const UNITARITY_TOL: f64 = 1e-8;

    pub fn new(u: CMatrix) -> Result<Self> {
        let defect = u.unitarity_defect();
        if defect.is_nan() || defect > Self::UNITARITY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { u })
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn vector(&self, i: usize) -> CVector {
        self.u.column(i)
    }

    /// `F_ij = <., f_j> f_i`.
    pub fn element(&self, i: usize, j: usize) -> CMatrix {
        self.vector(i).outer(&self.vector(j))
    }
}

/// `sum_ij E_ji ⊗ T(E_ij)`: block `(a, b)` is `T(E_ba)`.
pub fn j1(t: &LinearMap) -> CMatrix {
    let n = t.dim_in();
    let m = t.dim_out();
    let c = t.choi2();
    CMatrix::from_fn(n * m, n * m, |r, s| {
        let (a, p) = (r / m, r % m);
        let (b, q) = (s / m, s % m);
        c[(b * m + p, a * m + q)]
    })
}

/// `sum_ij E_ij ⊗ T(E_ij)`, the canonical Choi matrix.
pub fn j2(t: &LinearMap) -> CMatrix {
    t.choi2().clone()
}

/// Reads `c` as a Choi matrix, block `(i, j)` being `T(E_ij)`.
pub fn j2_inverse(c: &CMatrix, n: usize, m: usize) -> Result<LinearMap> {
    LinearMap::from_choi2(c.clone(), n, m)
}

/// `sum_ij F_ij ⊗ T(F_ij)` for the basis `F_ij = f_i f_j*`.
pub fn j2_in_basis(t: &LinearMap, basis: &BasisChange) -> Result<CMatrix> {
    let n = t.dim_in();
    if basis.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis of C^{} for a map on C^{n}",
            basis.dim()
        )));
    }
    let m = t.dim_out();
    let mut out = CMatrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            let f = basis.element(i, j);
            let image = t.apply(&f)?;
            out = &out + &crate::numerics::tensor(&f, &image);
        }
    }
    Ok(out)
}

/// Disagreement between the three Hilbert-Schmidt pairings of two maps:
/// through `j1`, through `j2`, and directly as `sum_ij <T1(E_ij), T2(E_ij)>`.
pub fn isometry_defect(t1: &LinearMap, t2: &LinearMap) -> Result<f64> {
    if (t1.dim_in(), t1.dim_out()) != (t2.dim_in(), t2.dim_out()) {
        return Err(Error::DimensionMismatch("maps of different shape".into()));
    }
    let via_j1 = frobenius_inner(&j1(t1), &j1(t2))?;
    let via_j2 = frobenius_inner(&j2(t1), &j2(t2))?;
    let direct = map_inner(t1, t2)?;
    Ok((via_j1 - via_j2).norm() + (via_j2 - direct).norm())
}

/// `sum_ij <T1(E_ij), T2(E_ij)>`, the Hilbert-Schmidt product on maps.
pub fn map_inner(t1: &LinearMap, t2: &LinearMap) -> Result<C64> {
    let basis = WeylBasis::new(t1.dim_in());
    let mut acc = ZERO;
    for (_, e) in basis.iter() {
        acc += frobenius_inner(&t1.apply(&e)?, &t2.apply(&e)?)?;
    }
    Ok(acc)
}

/// `max_ij |T(E_ij*) - T(E_ij)*|_max`; zero iff `T` preserves hermiticity.
pub fn hermiticity_defect(t: &LinearMap) -> f64 {
    let n = t.dim_in();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            // E_ij* = E_ji
            let lhs = t.image_of_unit(j, i);
            let rhs = t.image_of_unit(i, j).adjoint();
            worst = worst.max((&lhs - &rhs).max_abs());
        }
    }
    worst
}
