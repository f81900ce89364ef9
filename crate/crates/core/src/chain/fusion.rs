//! Fundamental and fused R- and K-matrices of the rational six-vertex model.

use nalgebra::DMatrix;

use super::operator::{permutation, OperatorMatrix, C64};
use crate::error::{Error, Result};

/// Whether fused objects carry their scalar normalization factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Multiply by `χ1` or `χ2`, removing the trivial zeros.
    Chi,
    /// Bare projected products, polynomial in `u` with no poles.
    Raw,
}

/// Boundary parameters of a fundamental K-matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KParams {
    pub alpha: f64,
    pub xi_plus: C64,
    pub xi_minus: C64,
}

impl KParams {
    pub fn diagonal(alpha: f64) -> Self {
        KParams {
            alpha,
            xi_plus: C64::new(0.0, 0.0),
            xi_minus: C64::new(0.0, 0.0),
        }
    }

    pub fn symmetric(alpha: f64, xi: f64) -> Self {
        KParams {
            alpha,
            xi_plus: C64::new(xi, 0.0),
            xi_minus: C64::new(xi, 0.0),
        }
    }
}

const POLE_EPS: f64 = 1e-12;

fn i() -> C64 {
    C64::new(0.0, 1.0)
}

/// `j` for an auxiliary space built from `two_j` spin-1/2 legs.
fn spin(two_j: usize) -> f64 {
    two_j as f64 / 2.0
}

/// `u·1 + i P` on `C^2 ⊗ C^2`.
pub fn r_fundamental(u: C64) -> OperatorMatrix {
    let data = DMatrix::<C64>::identity(4, 4) * u + permutation() * i();
    OperatorMatrix::new(vec![2, 2], data).expect("4x4")
}

/// Symmetrizer on `(C^2)^{⊗n}` as the ordered product of partial sums of transpositions.
pub fn projector_sym(n: usize) -> OperatorMatrix {
    assert!(n >= 1, "projector needs at least one leg");
    let legs = vec![2; n];
    let p = permutation();
    let mut acc = OperatorMatrix::identity(legs.clone());
    let mut factorial = 1.0;
    for k in 1..n {
        let mut sum = OperatorMatrix::identity(legs.clone());
        for l in 0..k {
            let swap = OperatorMatrix::embed(legs.clone(), &p, &[l, k]).expect("legs in range");
            sum = sum.add(&swap).expect("same legs");
        }
        acc = acc.mul(&sum).expect("same legs");
        factorial *= (k + 1) as f64;
    }
    acc.scale(C64::new(1.0 / factorial, 0.0))
}

/// Orthonormal basis of the symmetric subspace of `(C^2)^{⊗n}`, one column
/// per number of down spins (Dicke states).
pub fn dicke_isometry(n: usize) -> DMatrix<C64> {
    let dim = 1usize << n;
    let mut v = DMatrix::zeros(dim, n + 1);
    let mut counts = vec![0usize; n + 1];
    for idx in 0..dim {
        counts[idx.count_ones() as usize] += 1;
    }
    for idx in 0..dim {
        let m = idx.count_ones() as usize;
        v[(idx, m)] = C64::new(1.0 / (counts[m] as f64).sqrt(), 0.0);
    }
    v
}

fn checked_recip(den: C64, what: &str, u: C64) -> Result<C64> {
    if den.norm() < POLE_EPS {
        return Err(Error::Pole(format!("{what} at {u}")));
    }
    Ok(C64::new(1.0, 0.0) / den)
}

/// `χ1(u) = 1 / Π_{k=0}^{2j-2} (u + i(j - 1/2 - k))`.
pub fn chi1(two_j: usize, u: C64) -> Result<C64> {
    let j = spin(two_j);
    let den = (0..two_j.saturating_sub(1)).fold(C64::new(1.0, 0.0), |acc, k| {
        acc * (u + i() * (j - 0.5 - k as f64))
    });
    checked_recip(den, "chi1", u)
}

/// `χ2(u) = 1 / Π_{k=1}^{4j-3} (u + i(j - k/2))`, an empty product for `j = 1/2`.
pub fn chi2(two_j: usize, u: C64) -> Result<C64> {
    let j = spin(two_j);
    let top = (2 * two_j).saturating_sub(3);
    let den = (1..=top).fold(C64::new(1.0, 0.0), |acc, k| {
        acc * (u + i() * (j - k as f64 / 2.0))
    });
    checked_recip(den, "chi2", u)
}

/// Fused R-matrix on `(C^2)^{⊗2j} ⊗ C^2`: `P⁺ R_{a_1 b}(u + (1-j-1/2)i) ⋯ R_{a_{2j} b}(u + (j-1/2)i) P⁺`.
pub fn fuse_r(two_j: usize, u: C64, norm: Normalization) -> Result<OperatorMatrix> {
    if two_j == 0 {
        return Err(Error::InvalidParameter {
            name: "j",
            reason: "must be at least 1/2".into(),
        });
    }
    let j = spin(two_j);
    let mut legs = vec![2; two_j];
    legs.push(2);
    let mut m = OperatorMatrix::identity(legs.clone());
    for k in 1..=two_j {
        let r = r_fundamental(u + i() * (k as f64 - j - 0.5));
        m.apply_right(r.data(), &[k - 1, two_j])?;
    }
    let p = projector_sym(two_j).kron(&OperatorMatrix::identity(vec![2]));
    let mut out = p.mul(&m)?.mul(&p)?;
    if norm == Normalization::Chi {
        out = out.scale(chi1(two_j, u)?);
    }
    Ok(out)
}

/// [`fuse_r`] restricted to the symmetric subspace: legs `[2j+1, 2]`.
pub fn fuse_r_sym(two_j: usize, u: C64, norm: Normalization) -> Result<OperatorMatrix> {
    fuse_r(two_j, u, norm)?.compress_leading(two_j, &dicke_isometry(two_j))
}

/// `[[iα + u, u ξ+], [u ξ-, iα - u]]`.
pub fn k_fundamental(u: C64, params: &KParams) -> OperatorMatrix {
    let ia = i() * params.alpha;
    let data = DMatrix::from_row_slice(
        2,
        2,
        &[ia + u, u * params.xi_plus, u * params.xi_minus, ia - u],
    );
    OperatorMatrix::new(vec![2], data).expect("2x2")
}

/// Fused K-matrix on `(C^2)^{⊗2j}`: the projected ordered product over `k`
/// of `Π_{l<k} R_{a_l a_k}(2u + (k+l-2j-1)i) · K_{a_k}(u + (k-j-1/2)i)`.
pub fn fuse_k(
    two_j: usize,
    u: C64,
    params: &KParams,
    norm: Normalization,
) -> Result<OperatorMatrix> {
    if two_j == 0 {
        return Err(Error::InvalidParameter {
            name: "j",
            reason: "must be at least 1/2".into(),
        });
    }
    let j = spin(two_j);
    let n = two_j as f64;
    let legs = vec![2; two_j];
    let mut m = OperatorMatrix::identity(legs.clone());
    for k in 1..=two_j {
        for l in 1..k {
            let r = r_fundamental(u * 2.0 + i() * ((k + l) as f64 - n - 1.0));
            m.apply_right(r.data(), &[l - 1, k - 1])?;
        }
        let kf = k_fundamental(u + i() * (k as f64 - j - 0.5), params);
        m.apply_right(kf.data(), &[k - 1])?;
    }
    let p = projector_sym(two_j);
    let mut out = p.mul(&m)?.mul(&p)?;
    if norm == Normalization::Chi {
        out = out.scale(chi2(two_j, u)?);
    }
    Ok(out)
}

/// [`fuse_k`] restricted to the symmetric subspace: legs `[2j+1]`.
pub fn fuse_k_sym(
    two_j: usize,
    u: C64,
    params: &KParams,
    norm: Normalization,
) -> Result<OperatorMatrix> {
    fuse_k(two_j, u, params, norm)?.compress_leading(two_j, &dicke_isometry(two_j))
}
