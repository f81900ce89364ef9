//! Chain specifications, transfer matrices and Hamiltonians.

use nalgebra::DMatrix;
use serde::Serialize;

use super::fusion::{fuse_k, fuse_k_sym, fuse_r, fuse_r_sym, KParams, Normalization};
use super::operator::{pauli_on, spin_dot, OperatorMatrix, Pauli, C64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Periodic,
    Open,
}

/// Chain length, topology and (open chains only) boundary parameters.
///
/// The right boundary is diagonal with parameter `alpha`. The left boundary
/// uses `beta` and the symmetric off-diagonal coupling `xi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainSpec {
    pub n: usize,
    pub topology: Topology,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
}

impl ChainSpec {
    pub fn periodic(n: usize) -> Self {
        ChainSpec {
            n,
            topology: Topology::Periodic,
            alpha: 0.0,
            beta: 0.0,
            xi: 0.0,
        }
    }

    pub fn open(n: usize, alpha: f64, beta: f64, xi: f64) -> Self {
        ChainSpec {
            n,
            topology: Topology::Open,
            alpha,
            beta,
            xi,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter {
                name: "sites",
                reason: "chain needs at least one site".into(),
            });
        }
        if self.topology == Topology::Open {
            for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
                if v == 0.0 || !v.is_finite() {
                    return Err(Error::InvalidParameter {
                        name,
                        reason: format!("must be finite and nonzero, got {v}"),
                    });
                }
            }
            if !self.xi.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "xi",
                    reason: "must be finite".into(),
                });
            }
        }
        Ok(())
    }

    pub fn right_k(&self) -> KParams {
        KParams::diagonal(self.alpha)
    }

    pub fn left_k(&self) -> KParams {
        KParams::symmetric(self.beta, self.xi)
    }
}

/// Auxiliary space used when tracing out fused legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxRepr {
    /// `2j+1`-dimensional symmetric subspace.
    Symmetric,
    /// Full `(C^2)^{⊗2j}` with the projectors kept explicitly.
    Full,
}

fn aux_legs(two_j: usize, repr: AuxRepr) -> Vec<usize> {
    match repr {
        AuxRepr::Symmetric => vec![two_j + 1],
        AuxRepr::Full => vec![2; two_j],
    }
}

fn fused_r(two_j: usize, u: C64, norm: Normalization, repr: AuxRepr) -> Result<OperatorMatrix> {
    match repr {
        AuxRepr::Symmetric => fuse_r_sym(two_j, u, norm),
        AuxRepr::Full => fuse_r(two_j, u, norm),
    }
}

fn fused_k(
    two_j: usize,
    u: C64,
    params: &KParams,
    norm: Normalization,
    repr: AuxRepr,
) -> Result<OperatorMatrix> {
    match repr {
        AuxRepr::Symmetric => fuse_k_sym(two_j, u, params, norm),
        AuxRepr::Full => fuse_k(two_j, u, params, norm),
    }
}

/// Right-multiplies `m` by `R_{a,s}` for the listed sites (1-based, in order).
fn push_sites(
    m: &mut OperatorMatrix,
    r: &DMatrix<C64>,
    n_aux: usize,
    sites: impl Iterator<Item = usize>,
) -> Result<()> {
    let aux: Vec<usize> = (0..n_aux).collect();
    for s in sites {
        let mut targets = aux.clone();
        targets.push(n_aux + s - 1);
        m.apply_right(r, &targets)?;
    }
    Ok(())
}

/// Transfer matrix with spin-`two_j/2` auxiliary space for either topology.
pub fn transfer(
    spec: &ChainSpec,
    two_j: usize,
    u: C64,
    norm: Normalization,
    repr: AuxRepr,
) -> Result<OperatorMatrix> {
    spec.validate()?;
    let aux = aux_legs(two_j, repr);
    let n_aux = aux.len();
    let mut legs = aux;
    legs.extend(std::iter::repeat_n(2, spec.n));
    let r = fused_r(two_j, u, norm, repr)?.into_data();
    let n = spec.n;
    let m = match spec.topology {
        Topology::Periodic => {
            let mut m = OperatorMatrix::identity(legs);
            push_sites(&mut m, &r, n_aux, (1..=n).rev())?;
            m
        }
        Topology::Open => {
            let kl =
                fused_k(two_j, -u - C64::new(0.0, 1.0), &spec.left_k(), norm, repr)?.into_data();
            let kr = fused_k(two_j, u, &spec.right_k(), norm, repr)?.into_data();
            let aux_targets: Vec<usize> = (0..n_aux).collect();
            let mut m = OperatorMatrix::identity(legs);
            m.apply_right(&kl, &aux_targets)?;
            push_sites(&mut m, &r, n_aux, (1..=n).rev())?;
            m.apply_right(&kr, &aux_targets)?;
            push_sites(&mut m, &r, n_aux, 1..=n)?;
            m
        }
    };
    m.partial_trace(n_aux)
}

/// `tr_a R_{aN}(u) ⋯ R_{a1}(u)` with normalized fused R-matrices.
pub fn transfer_periodic(spec: &ChainSpec, two_j: usize, u: C64) -> Result<OperatorMatrix> {
    if spec.topology != Topology::Periodic {
        return Err(Error::InvalidParameter {
            name: "topology",
            reason: "expected a periodic chain".into(),
        });
    }
    transfer(spec, two_j, u, Normalization::Chi, AuxRepr::Symmetric)
}

/// `tr_a K^l(u) T(u) K^r(u) T̂(u)` with normalized fused R- and K-matrices.
pub fn transfer_open(spec: &ChainSpec, two_j: usize, u: C64) -> Result<OperatorMatrix> {
    if spec.topology != Topology::Open {
        return Err(Error::InvalidParameter {
            name: "topology",
            reason: "expected an open chain".into(),
        });
    }
    transfer(spec, two_j, u, Normalization::Chi, AuxRepr::Symmetric)
}

/// Degree in `u` of the fundamental transfer matrix.
fn fundamental_degree(spec: &ChainSpec) -> usize {
    match spec.topology {
        Topology::Periodic => spec.n,
        Topology::Open => 2 * spec.n + 2,
    }
}

/// `d t / du` at `u = 0` for the fundamental transfer matrix, read off the
/// discrete Fourier transform of `t` on a small circle (exact for polynomials).
pub fn transfer_derivative_at_zero(spec: &ChainSpec) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let m = fundamental_degree(spec) + 2;
    let radius = 0.5;
    let mut d = OperatorMatrix::zeros(vec![2; spec.n]);
    for s in 0..m {
        let z = C64::from_polar(radius, std::f64::consts::TAU * s as f64 / m as f64);
        let t = transfer(spec, 1, z, Normalization::Chi, AuxRepr::Symmetric)?;
        d = d.add(&t.scale(C64::new(1.0, 0.0) / (z * m as f64)))?;
    }
    let t0 = transfer(
        spec,
        1,
        C64::new(0.0, 0.0),
        Normalization::Chi,
        AuxRepr::Symmetric,
    )?;
    Ok((t0, d))
}

/// `(i/2) t(0)^{-1} t'(0) - (N/2) 1`.
pub fn hamiltonian_periodic(spec: &ChainSpec) -> Result<OperatorMatrix> {
    if spec.topology != Topology::Periodic {
        return Err(Error::InvalidParameter {
            name: "topology",
            reason: "expected a periodic chain".into(),
        });
    }
    let (t0, d) = transfer_derivative_at_zero(spec)?;
    let inv = t0
        .data()
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidParameter {
            name: "sites",
            reason: "t(0) is singular".into(),
        })?;
    let h = inv * d.data() * C64::new(0.0, 0.5)
        - DMatrix::<C64>::identity(d.dim(), d.dim()) * C64::new(spec.n as f64 / 2.0, 0.0);
    OperatorMatrix::new(vec![2; spec.n], h)
}

/// `i (-1)^{N+1} / (2 α β) t'(0) - N 1`.
pub fn hamiltonian_open(spec: &ChainSpec) -> Result<OperatorMatrix> {
    if spec.topology != Topology::Open {
        return Err(Error::InvalidParameter {
            name: "topology",
            reason: "expected an open chain".into(),
        });
    }
    spec.validate()?;
    let (_, d) = transfer_derivative_at_zero(spec)?;
    let sign = if spec.n % 2 == 1 { 1.0 } else { -1.0 };
    let pref = C64::new(0.0, sign / (2.0 * spec.alpha * spec.beta));
    d.scale(pref)
        .sub(&OperatorMatrix::identity(vec![2; spec.n]).scale(C64::new(spec.n as f64, 0.0)))
}

/// `(1/4) Σ_n (σ_n · σ_{n+1} - 1)` with periodic wraparound.
pub fn hamiltonian_periodic_pauli(n: usize) -> OperatorMatrix {
    let id = OperatorMatrix::identity(vec![2; n]);
    (1..=n).fold(OperatorMatrix::zeros(vec![2; n]), |acc, s| {
        let next = s % n + 1;
        let bond = spin_dot(n, s, next).sub(&id).expect("same legs");
        acc.add(&bond.scale(C64::new(0.25, 0.0)))
            .expect("same legs")
    })
}

/// `Σ_n σ_n · σ_{n+1} + σ^z_1 / α - (ξ σ^x_N + σ^z_N) / β`.
pub fn hamiltonian_open_pauli(spec: &ChainSpec) -> Result<OperatorMatrix> {
    spec.validate()?;
    let n = spec.n;
    let mut h = OperatorMatrix::zeros(vec![2; n]);
    for s in 1..n {
        h = h.add(&spin_dot(n, s, s + 1))?;
    }
    h = h.add(&pauli_on(n, 1, Pauli::Z).scale(C64::new(1.0 / spec.alpha, 0.0)))?;
    let right = pauli_on(n, n, Pauli::X)
        .scale(C64::new(spec.xi, 0.0))
        .add(&pauli_on(n, n, Pauli::Z))?;
    h.sub(&right.scale(C64::new(1.0 / spec.beta, 0.0)))
}

/// Hamiltonian in Pauli form for either topology.
pub fn hamiltonian_pauli(spec: &ChainSpec) -> Result<OperatorMatrix> {
    match spec.topology {
        Topology::Periodic => {
            spec.validate()?;
            Ok(hamiltonian_periodic_pauli(spec.n))
        }
        Topology::Open => hamiltonian_open_pauli(spec),
    }
}

/// Sorted real parts of the eigenvalues of a Hermitian operator.
pub fn hermitian_spectrum(h: &OperatorMatrix) -> Vec<f64> {
    let mut e: Vec<f64> = h
        .data()
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    e.sort_by(f64::total_cmp);
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::operator::{relative_commutator, total_sz};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn single_site_trace_at_zero() {
        let t = transfer_periodic(&ChainSpec::periodic(1), 1, c(0.0, 0.0)).unwrap();
        assert!((t.data() - DMatrix::<C64>::identity(2, 2) * c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn symmetric_and_full_aux_agree() {
        let specs = [ChainSpec::periodic(3), ChainSpec::open(2, 0.7, -1.1, 0.5)];
        for spec in &specs {
            for two_j in 1..=3 {
                let u = c(0.41, 0.23);
                let a = transfer(spec, two_j, u, Normalization::Chi, AuxRepr::Symmetric).unwrap();
                let b = transfer(spec, two_j, u, Normalization::Chi, AuxRepr::Full).unwrap();
                assert!(
                    (a.data() - b.data()).norm() < 1e-10 * b.norm(),
                    "{spec:?} 2j={two_j}"
                );
            }
        }
    }

    #[test]
    fn periodic_hamiltonian_matches_pauli_form() {
        for n in 2..=4 {
            let spec = ChainSpec::periodic(n);
            let h = hamiltonian_periodic(&spec).unwrap();
            let p = hamiltonian_periodic_pauli(n);
            assert!(h.sub(&p).unwrap().norm() < 1e-9, "N={n}");
        }
        let e = hermitian_spectrum(&hamiltonian_periodic_pauli(2));
        let expect = [-2.0, 0.0, 0.0, 0.0];
        for (a, b) in e.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_hamiltonian_conserves_total_sz() {
        let h = hamiltonian_periodic_pauli(4);
        assert!(relative_commutator(&h, &total_sz(4)).unwrap() < 1e-12);
    }

    #[test]
    fn open_hamiltonian_matches_pauli_form() {
        for (n, xi) in [(1, 0.0), (2, 0.5), (3, 0.0), (3, 1.3)] {
            let spec = ChainSpec::open(n, 0.8, -1.4, xi);
            let h = hamiltonian_open(&spec).unwrap();
            let p = hamiltonian_open_pauli(&spec).unwrap();
            assert!(h.sub(&p).unwrap().norm() < 1e-8, "N={n} xi={xi}");
        }
    }

    #[test]
    fn open_u1_symmetry_only_without_xi() {
        let u = c(0.3, -0.4);
        let sym = transfer_open(&ChainSpec::open(3, 0.7, 1.2, 0.0), 1, u).unwrap();
        assert!(relative_commutator(&sym, &total_sz(3)).unwrap() < 1e-12);
        let broken = transfer_open(&ChainSpec::open(3, 0.7, 1.2, 0.5), 1, u).unwrap();
        assert!(relative_commutator(&broken, &total_sz(3)).unwrap() > 1e-3);
    }

    #[test]
    fn invalid_boundary_parameters() {
        let err = ChainSpec::open(2, 0.0, 1.0, 0.0).validate().unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "alpha", .. }));
        assert!(ChainSpec::periodic(0).validate().is_err());
    }
}
