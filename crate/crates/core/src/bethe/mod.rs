//! Baxter `Q`-functions: linear solution of the T-Q relation for a given
//! `T_1`, Bethe equations at the roots, and reconstruction of `T_1`.

mod equations;
mod solve;

pub use equations::{
    bethe_residual_open, bethe_residual_periodic, max_relative, reconstruct_t1,
    refine_roots_newton, NewtonOutcome, Reconstruction, RootResidual,
};
pub use solve::{candidate_degrees, solve_q_for_family, solve_q_linear, QFunction};
