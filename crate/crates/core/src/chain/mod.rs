//! Fused R- and K-matrices, transfer matrices, Hamiltonians and the
//! eigenvalue functions of periodic and open XXX spin-1/2 chains.

mod fusion;
mod operator;
mod spectrum;
mod transfer;

pub use fusion::{
    chi1, chi2, dicke_isometry, fuse_k, fuse_k_sym, fuse_r, fuse_r_sym, k_fundamental,
    projector_sym, r_fundamental, KParams, Normalization,
};
pub use operator::{
    commutator, pauli, pauli_on, permutation, relative_commutator, spin_dot, total_sz,
    OperatorMatrix, Pauli, C64,
};
pub use spectrum::{
    normalization_factor, raw_degree, spectrum, spectrum_family, trivial_zeros,
    NormalizationRecord, SpectralFamily, Spectrum, SpectrumOptions, MAX_KMAX, MAX_SITES,
};
pub use transfer::{
    hamiltonian_open, hamiltonian_open_pauli, hamiltonian_pauli, hamiltonian_periodic,
    hamiltonian_periodic_pauli, hermitian_spectrum, transfer, transfer_open, transfer_periodic,
    AuxRepr, ChainSpec, Topology,
};
