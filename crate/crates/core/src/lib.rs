//! Jamiołkowski transforms and k-positivity of linear maps between matrix
//! algebras.
//!
//! A linear map `T: C^{n x n} -> C^{m x m}` is represented by its Choi
//! matrix `j2(T) = sum_ij E_ij ⊗ T(E_ij)`. The map is k-positive exactly
//! when `<j2(T) v, v> >= 0` for all `v` of Schmidt rank at most `k`, and
//! completely positive exactly when `j2(T)` is positive semidefinite. This
//! crate computes both transforms, decides complete positivity, and searches
//! for vectors of bounded Schmidt rank that certify a map is *not*
//! k-positive.
//!
//! ```
//! use kpositivity::{is_k_positive, LinearMap, SearchBudget, Status, VERDICT_TOL};
//!
//! let transpose = LinearMap::transposition(2);
//! let budget = SearchBudget::new(8, 200);
//! let k1 = is_k_positive(&transpose, 1, &VERDICT_TOL, &budget, 7).unwrap();
//! let k2 = is_k_positive(&transpose, 2, &VERDICT_TOL, &budget, 7).unwrap();
//! assert_ne!(k1.status, Status::Violated);
//! assert_eq!(k2.status, Status::Violated);
//! assert!((k2.best_value + 1.0).abs() < 1e-9);
//! ```
//!
//! Modules:
//! - [`numerics`]: complex matrices, Kronecker products, eigen/SVD.
//! - [`maps`]: linear maps, Kraus form, ancilla extension, named maps, spec files.
//! - [`jamiolkowski`]: `j1`, `j2`, basis changes, isometry and hermiticity defects.
//! - [`schmidt`]: Schmidt decomposition, rank, samplers.
//! - [`certify`]: rank-constrained minimization of hermitian forms.
//! - [`positivity`]: verdicts and the ancilla cross-check.
//! - [`cli`]: report building behind the `kpositivity` binary.

pub mod certify;
pub mod cli;
pub mod error;
pub mod jamiolkowski;
pub mod maps;
pub mod numerics;
pub mod positivity;
pub mod random;
pub mod schmidt;

pub use certify::{
    brute_force_min, minimize_rank_constrained, polish, Certificate, SearchBudget, StepRule,
};
pub use error::{Error, Result};
pub use jamiolkowski::{
    hermiticity_defect, isometry_defect, j1, j2, j2_in_basis, j2_inverse, BasisChange, WeylBasis,
};
pub use maps::{from_spec, to_kraus, zoo, KrausSet, LinearMap, MapSpec, ZooMap};
pub use numerics::{
    frobenius_inner, hermitian_eig, reshape_vector_to_matrix, svd, tensor, CMatrix, CVector,
    Tolerance, C64,
};
pub use positivity::{
    ancilla_crosscheck, is_completely_positive, is_hermiticity_preserving, is_k_positive,
    quadratic_form, PositivityVerdict, Query, Status, VERDICT_TOL,
};
pub use schmidt::{
    build_from_systems, sample_rank_k, schmidt_decompose, schmidt_rank, SchmidtForm,
};
