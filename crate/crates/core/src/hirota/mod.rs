//! Residual evaluators for the bilinear and linear functional relations
//! among transfer-matrix eigenvalues.

mod relations;
mod scalars;

pub use relations::{
    check_real_analytic, compatibility_decomposition, compatibility_residual, det_solution,
    hirota_like_residual, hirota_residual, lax_residual, tk_from_q_diag, tq_residual, LaxSide,
    LaxVariant, LaxWitness, Residual,
};
pub use scalars::{
    aux_factors, delta_open, delta_open_with, phi_open, phi_open_with, phi_periodic,
    quantum_determinant, AuxFactors,
};
