//! Determinant identities: minors and the Jacobi identity, brackets and
//! Plücker relations of rectangular matrices, and the Plücker route to the
//! Hirota-like relations.

mod matrix;
mod plucker;

pub use matrix::{determinant, determinant_sparse, jacobi_residual, minor, Matrix};
pub use plucker::{
    build_hirota_plucker_matrix, hirota_plucker_indices, tridiagonal_matrix,
    verify_hirota_like_via_plucker, with_unit_rows, BracketMatrix, PluckerCheck, UnitRowSpec,
};
