//! Dense operators on tensor products of small local spaces.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Square matrix on `⊗_l C^{legs[l]}`. Leg 0 is the most significant
/// tensor factor, so for a chain site 1 is the leftmost factor.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    legs: Vec<usize>,
    data: DMatrix<C64>,
}

fn dim_of(legs: &[usize]) -> usize {
    legs.iter().product()
}

impl OperatorMatrix {
    pub fn new(legs: Vec<usize>, data: DMatrix<C64>) -> Result<Self> {
        let d = dim_of(&legs);
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::LegMismatch(format!(
                "legs {legs:?} give dimension {d}, matrix is {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(OperatorMatrix { legs, data })
    }

    pub fn identity(legs: Vec<usize>) -> Self {
        let d = dim_of(&legs);
        OperatorMatrix {
            legs,
            data: DMatrix::identity(d, d),
        }
    }

    pub fn zeros(legs: Vec<usize>) -> Self {
        let d = dim_of(&legs);
        OperatorMatrix {
            legs,
            data: DMatrix::zeros(d, d),
        }
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn into_data(self) -> DMatrix<C64> {
        self.data
    }

    pub fn kron(&self, other: &OperatorMatrix) -> OperatorMatrix {
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        OperatorMatrix {
            legs,
            data: self.data.kronecker(&other.data),
        }
    }

    fn check_same_legs(&self, other: &OperatorMatrix) -> Result<()> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch(format!(
                "{:?} vs {:?}",
                self.legs, other.legs
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_legs(other)?;
        Ok(OperatorMatrix {
            legs: self.legs.clone(),
            data: &self.data * &other.data,
        })
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_legs(other)?;
        Ok(OperatorMatrix {
            legs: self.legs.clone(),
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_legs(other)?;
        Ok(OperatorMatrix {
            legs: self.legs.clone(),
            data: &self.data - &other.data,
        })
    }

    pub fn scale(&self, s: C64) -> OperatorMatrix {
        OperatorMatrix {
            legs: self.legs.clone(),
            data: &self.data * s,
        }
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            legs: self.legs.clone(),
            data: self.data.adjoint(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn trace(&self) -> C64 {
        self.data.trace()
    }

    /// Local operator placed on `targets` (in the listed order), identity elsewhere.
    pub fn embed(
        legs: Vec<usize>,
        local: &DMatrix<C64>,
        targets: &[usize],
    ) -> Result<OperatorMatrix> {
        let mut op = OperatorMatrix::identity(legs);
        op.apply_left(local, targets)?;
        Ok(op)
    }

    fn layout(&self, local: &DMatrix<C64>, targets: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.legs.len();
        let mut seen = vec![false; n];
        for &t in targets {
            if t >= n || seen[t] {
                return Err(Error::LegMismatch(format!(
                    "bad target legs {targets:?} for {:?}",
                    self.legs
                )));
            }
            seen[t] = true;
        }
        let dloc: usize = targets.iter().map(|&t| self.legs[t]).product();
        if local.nrows() != dloc || local.ncols() != dloc {
            return Err(Error::LegMismatch(format!(
                "local operator {}x{} on legs {targets:?} of dimension {dloc}",
                local.nrows(),
                local.ncols()
            )));
        }
        let mut stride = vec![1usize; n];
        for l in (0..n.saturating_sub(1)).rev() {
            stride[l] = stride[l + 1] * self.legs[l + 1];
        }
        // Offsets of every local configuration, first target most significant.
        let mut local_off = vec![0usize];
        for &t in targets {
            let mut next = Vec::with_capacity(local_off.len() * self.legs[t]);
            for &o in &local_off {
                for d in 0..self.legs[t] {
                    next.push(o + d * stride[t]);
                }
            }
            local_off = next;
        }
        // Offsets of every configuration of the remaining legs.
        let mut base = vec![0usize];
        for l in 0..n {
            if seen[l] {
                continue;
            }
            let mut next = Vec::with_capacity(base.len() * self.legs[l]);
            for &o in &base {
                for d in 0..self.legs[l] {
                    next.push(o + d * stride[l]);
                }
            }
            base = next;
        }
        Ok((base, local_off))
    }

    /// `self <- (local ⊗ 1) self`.
    pub fn apply_left(&mut self, local: &DMatrix<C64>, targets: &[usize]) -> Result<()> {
        let (base, loc) = self.layout(local, targets)?;
        let dl = loc.len();
        let mut x = vec![ZERO; dl];
        for c in 0..self.dim() {
            for &b in &base {
                for (l, &o) in loc.iter().enumerate() {
                    x[l] = self.data[(b + o, c)];
                }
                for (l, &o) in loc.iter().enumerate() {
                    let mut acc = ZERO;
                    for (lp, xv) in x.iter().enumerate() {
                        acc += local[(l, lp)] * xv;
                    }
                    self.data[(b + o, c)] = acc;
                }
            }
        }
        Ok(())
    }

    /// `self <- self (local ⊗ 1)`.
    pub fn apply_right(&mut self, local: &DMatrix<C64>, targets: &[usize]) -> Result<()> {
        let (base, loc) = self.layout(local, targets)?;
        let dl = loc.len();
        let mut x = vec![ZERO; dl];
        for r in 0..self.dim() {
            for &b in &base {
                for (l, &o) in loc.iter().enumerate() {
                    x[l] = self.data[(r, b + o)];
                }
                for (l, &o) in loc.iter().enumerate() {
                    let mut acc = ZERO;
                    for (lp, xv) in x.iter().enumerate() {
                        acc += xv * local[(lp, l)];
                    }
                    self.data[(r, b + o)] = acc;
                }
            }
        }
        Ok(())
    }

    /// Trace over the first `count` legs.
    pub fn partial_trace(&self, count: usize) -> Result<OperatorMatrix> {
        if count > self.legs.len() {
            return Err(Error::LegMismatch(format!(
                "cannot trace {count} of {:?}",
                self.legs
            )));
        }
        let traced = dim_of(&self.legs[..count]);
        let rest_legs = self.legs[count..].to_vec();
        let rest = dim_of(&rest_legs);
        let mut out = DMatrix::zeros(rest, rest);
        for a in 0..traced {
            let off = a * rest;
            out += self.data.view((off, off), (rest, rest));
        }
        Ok(OperatorMatrix {
            legs: rest_legs,
            data: out,
        })
    }

    /// `V† self V` for an isometry `V` acting on the first `V.nrows()`-dimensional leg block.
    pub fn compress_leading(&self, lead_legs: usize, iso: &DMatrix<C64>) -> Result<OperatorMatrix> {
        let lead = dim_of(&self.legs[..lead_legs]);
        if iso.nrows() != lead {
            return Err(Error::LegMismatch(format!(
                "isometry has {} rows, leading block is {lead}",
                iso.nrows()
            )));
        }
        let rest = dim_of(&self.legs[lead_legs..]);
        let full = iso.kronecker(&DMatrix::<C64>::identity(rest, rest));
        let mut legs = vec![iso.ncols()];
        legs.extend_from_slice(&self.legs[lead_legs..]);
        Ok(OperatorMatrix {
            legs,
            data: full.adjoint() * &self.data * full,
        })
    }
}

/// `[a, b]`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// `‖[a, b]‖ / (‖a‖ ‖b‖)` in the Frobenius norm.
pub fn relative_commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
    let scale = a.norm() * b.norm();
    let c = commutator(a, b)?.norm();
    Ok(if scale == 0.0 { c } else { c / scale })
}

/// Pauli matrices with `σ^z = diag(1, -1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

pub fn pauli(p: Pauli) -> DMatrix<C64> {
    let i = C64::new(0.0, 1.0);
    match p {
        Pauli::X => DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        Pauli::Y => DMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]),
        Pauli::Z => DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    }
}

/// Swap of two spin-1/2 factors.
pub fn permutation() -> DMatrix<C64> {
    let mut p = DMatrix::zeros(4, 4);
    p[(0, 0)] = ONE;
    p[(1, 2)] = ONE;
    p[(2, 1)] = ONE;
    p[(3, 3)] = ONE;
    p
}

/// `σ^p` on site `site` (1-based) of an `n`-site chain.
pub fn pauli_on(n: usize, site: usize, p: Pauli) -> OperatorMatrix {
    OperatorMatrix::embed(vec![2; n], &pauli(p), &[site - 1]).expect("site within chain")
}

/// `σ_a · σ_b` on an `n`-site chain.
pub fn spin_dot(n: usize, a: usize, b: usize) -> OperatorMatrix {
    if a == b {
        return OperatorMatrix::identity(vec![2; n]).scale(C64::new(3.0, 0.0));
    }
    let mut acc = OperatorMatrix::zeros(vec![2; n]);
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        let mut term = pauli_on(n, a, p);
        term.apply_left(&pauli(p), &[b - 1])
            .expect("site within chain");
        acc = acc.add(&term).expect("same legs");
    }
    acc
}

/// `Σ_n σ^z_n`.
pub fn total_sz(n: usize) -> OperatorMatrix {
    (1..=n).fold(OperatorMatrix::zeros(vec![2; n]), |acc, s| {
        acc.add(&pauli_on(n, s, Pauli::Z)).expect("same legs")
    })
}
