//! Scalar data entering the bilinear relations: `φ`, `Δ`, quantum determinants
//! and the auxiliary products `X_k`, `Y_k`, `ψ_{l,k}`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::specfun::{Coeff, Field, FloatFn, Poly, SpectralFunction};

/// `(φ, φ̄) = ((u + i/2)^N, (u - i/2)^N)`.
pub fn phi_periodic<C: Coeff>(n: usize) -> (Poly<C>, Poly<C>) {
    let phi = Poly::linear(C::half_i(1)).pow(n as u32);
    let bar = phi.bar();
    (phi, bar)
}

/// `-(1/u)(u + i(α - 1/2))(s(u - i/2) - iβ)(u + i/2)^{2N+1}` with `s = √(1+ξ²)` supplied.
pub fn phi_open_with<C: Coeff>(n: usize, alpha: C, beta: C, radical: C) -> SpectralFunction<C> {
    let i = C::imag_unit();
    let a = Poly::linear(i.clone() * (alpha - C::from_ratio(1, 2)));
    let b = Poly::from_coeffs(vec![-(radical.clone() * C::half_i(1)) - i * beta, radical]);
    let tail = Poly::linear(C::half_i(1)).pow(2 * n as u32 + 1);
    let num = -(&(&a * &b) * &tail);
    SpectralFunction::new(num, Poly::u())
}

pub fn phi_open(n: usize, alpha: f64, beta: f64, xi: f64) -> FloatFn {
    let s = (1.0 + xi * xi).sqrt();
    phi_open_with(
        n,
        Complex64::new(alpha, 0.0),
        Complex64::new(beta, 0.0),
        Complex64::new(s, 0.0),
    )
}

/// `-2(1 - s)(u + i/2)^{2N+1}(u - i/2)^{2N+1}` with `s = √(1+ξ²)` supplied.
pub fn delta_open_with<C: Coeff>(n: usize, radical: C) -> Poly<C> {
    let plus = Poly::linear(C::half_i(1)).pow(2 * n as u32 + 1);
    let pref = C::from_i64(-2) * (C::one() - radical);
    (&plus * &plus.bar()).scale(&pref)
}

pub fn delta_open(n: usize, xi: f64) -> Poly<Complex64> {
    delta_open_with(n, Complex64::new((1.0 + xi * xi).sqrt(), 0.0))
}

/// `T_{2,k} = Π_{j=0}^{k-1} φ^{[k-2j]} φ̄^{[2j-k]}` with `φ̄ = bar φ`.
pub fn quantum_determinant<C: Coeff>(phi: &SpectralFunction<C>, k: usize) -> SpectralFunction<C> {
    let bar = phi.bar();
    let k = k as i64;
    (0..k).fold(SpectralFunction::one(), |acc, j| {
        acc * phi.shift(k - 2 * j) * bar.shift(2 * j - k)
    })
}

/// The products `X_k`, `Y_k`, `ψ_{l,k}` and `ψ̄_{l,k}` for `0 <= l <= k <= kmax`.
#[derive(Clone, Debug)]
pub struct AuxFactors<C: Coeff> {
    pub x: Vec<SpectralFunction<C>>,
    pub y: Vec<SpectralFunction<C>>,
    psi: BTreeMap<(usize, usize), SpectralFunction<C>>,
    psi_bar: BTreeMap<(usize, usize), SpectralFunction<C>>,
}

impl<C: Coeff> AuxFactors<C> {
    pub fn psi(&self, l: usize, k: usize) -> &SpectralFunction<C> {
        &self.psi[&(l, k)]
    }

    pub fn psi_bar(&self, l: usize, k: usize) -> &SpectralFunction<C> {
        &self.psi_bar[&(l, k)]
    }

    pub fn kmax(&self) -> usize {
        self.x.len() - 1
    }
}

fn phi_run<C: Coeff>(
    f: &SpectralFunction<C>,
    count: i64,
    shift: impl Fn(i64) -> i64,
) -> SpectralFunction<C> {
    (0..count).fold(SpectralFunction::one(), |acc, j| acc * f.shift(shift(j)))
}

/// `X_k = Π_{j=0}^{k} φ^{[k-2j]}`, `Y_k = Π_{j=0}^{k-1} φ̄^{[2j-k]}`,
/// `ψ_{l,k} = Π_{j=0}^{k-l-1} φ^{[k-2j]}`, `ψ̄_{l,k} = Π_{j=0}^{k-l-1} φ̄^{[2j-k]}`.
pub fn aux_factors<C: Coeff>(phi: &SpectralFunction<C>, kmax: usize) -> AuxFactors<C> {
    let bar = phi.bar();
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut psi = BTreeMap::new();
    let mut psi_bar = BTreeMap::new();
    for k in 0..=kmax as i64 {
        x.push(phi_run(phi, k + 1, |j| k - 2 * j));
        y.push(phi_run(&bar, k, |j| 2 * j - k));
        for l in 0..=k {
            psi.insert((l as usize, k as usize), phi_run(phi, k - l, |j| k - 2 * j));
            psi_bar.insert(
                (l as usize, k as usize),
                phi_run(&bar, k - l, |j| 2 * j - k),
            );
        }
    }
    AuxFactors { x, y, psi, psi_bar }
}
