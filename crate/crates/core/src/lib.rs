//! Transfer-matrix fusion hierarchies of small XXX spin chains and the
//! functional relations among their eigenvalues.
//!
//! * [`specfun`]: exact and floating arithmetic on functions of the spectral parameter.
//! * [`chain`]: R- and K-matrices, transfer matrices, Hamiltonians, spectral families.
//! * [`hirota`]: residual evaluators for the bilinear and linear functional relations.
//! * [`detkit`]: determinants, minors, Jacobi and Plücker identities.
//! * [`bethe`]: Q-functions, Bethe equations and root polishing.

pub mod bethe;
pub mod chain;
pub mod detkit;
pub mod error;
pub mod hirota;
pub mod specfun;

pub use error::{Error, Result};
