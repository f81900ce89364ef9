//! Dense univariate polynomials in the spectral parameter `u`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::coeff::Coeff;

/// Dense polynomial, ascending powers of `u`. Trailing exact zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The identity function `u`.
    pub fn u() -> Self {
        Poly::from_coeffs(vec![C::zero(), C::one()])
    }

    /// `c u^n`.
    pub fn monomial(c: C, n: usize) -> Self {
        let mut v = vec![C::zero(); n];
        v.push(c);
        Poly::from_coeffs(v)
    }

    /// `u + a`.
    pub fn linear(a: C) -> Self {
        Poly::from_coeffs(vec![a, C::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Monic polynomial `prod (u - r)`.
    pub fn from_roots(roots: &[C]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, r| acc * Poly::linear(-r.clone()))
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, u: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * u.clone() + c.clone())
    }

    /// Evaluation at a complex float point, whatever the coefficient model.
    pub fn eval_c64(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + c.to_c64())
    }

    pub fn scale(&self, s: &C) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// `p(u + a)` by Horner's scheme in the shifted variable.
    pub fn translate(&self, a: &C) -> Self {
        let lin = Poly::linear(a.clone());
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * lin.clone() + Poly::constant(c.clone());
        }
        acc
    }

    /// `p^{[k]}(u) = p(u + i k / 2)`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        self.translate(&C::half_i(k))
    }

    /// `conj(p(conj u))`: conjugate every coefficient.
    pub fn bar(&self) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * C::from_i64(i as i64))
                .collect(),
        )
    }

    /// Every coefficient has `|Im| <= tol` (exact models: zero imaginary part).
    pub fn is_real_analytic(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_real(tol))
    }

    /// Number of leading zero coefficients, i.e. the power of `u` dividing `p`.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `u^m`; the caller guarantees `m <= valuation()`.
    pub fn drop_low(&self, m: usize) -> Self {
        debug_assert!(m <= self.valuation() || self.is_zero());
        Poly::from_coeffs(self.coeffs.iter().skip(m).cloned().collect())
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly<C>) -> (Poly<C>, Poly<C>) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![C::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = r[idx].clone() - c.clone() * dc.clone();
            }
            r[i] = C::zero();
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = C::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor. Meaningful in the exact model only.
    pub fn gcd(&self, other: &Poly<C>) -> Poly<C> {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Largest coefficient modulus; scale reference for float comparisons.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Replace coefficients with `|c| <= tol * max|c|` by zero (float cleanup).
    pub fn chop(&self, tol: f64) -> Self {
        let scale = self.max_abs_coeff();
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| {
                    if c.abs() <= tol * scale {
                        C::zero()
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }
}

impl Poly<Complex64> {
    /// Synthetic division by `u - root`, returning the quotient and the remainder value.
    pub fn deflate(&self, root: Complex64) -> (Poly<Complex64>, Complex64) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), Complex64::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (0..n).rev() {
            acc = acc * root + self.coeffs[i];
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        (Poly::from_coeffs(q), acc)
    }

    /// Polynomial roots from the eigenvalues of the companion matrix.
    pub fn roots(&self) -> Vec<Complex64> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[deg];
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -self.coeffs[i] / lead;
        }
        let eig = nalgebra::linalg::Schur::new(m)
            .eigenvalues()
            .expect("complex Schur form is triangular");
        let mut roots: Vec<Complex64> = eig.iter().copied().collect();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        roots
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Poly::from_coeffs(long)
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Mul<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}·u")?,
                _ => write!(f, "{c:?}·u^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::GaussRat;

    type P = Poly<GaussRat>;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_i64(n)
    }

    #[test]
    fn shift_of_u_by_two_is_u_plus_i() {
        let p = P::u().shift(2);
        assert_eq!(p, P::linear(GaussRat::imag_unit()));
    }

    #[test]
    fn half_shift_cancels() {
        let p = P::linear(GaussRat::half_i(1)).pow(2);
        assert_eq!(p.shift(-1), P::monomial(q(1), 2));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = P::from_coeffs(vec![q(3), q(-2), q(5), q(1)]);
        let d = P::from_coeffs(vec![GaussRat::imag_unit(), q(2)]);
        let (quo, rem) = a.div_rem(&d);
        assert_eq!(quo * d + rem.clone(), a);
        assert!(rem.degree().unwrap_or(0) == 0);
    }

    #[test]
    fn gcd_finds_common_factor() {
        let common = P::from_roots(&[q(2), GaussRat::half_i(1)]);
        let a = &common * &P::linear(q(7));
        let b = &common * &P::from_roots(&[q(-3), q(4)]);
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn bar_conjugates_coefficients() {
        let p = P::linear(GaussRat::half_i(1));
        assert_eq!(p.bar(), P::linear(GaussRat::half_i(-1)));
        let real = P::from_coeffs(vec![q(1), q(-4), q(2)]);
        assert_eq!(real.bar(), real);
    }

    #[test]
    fn float_roots_of_known_polynomial() {
        let r = [
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 2.0),
            Complex64::new(0.0, -1.0),
        ];
        let p = Poly::from_roots(&r);
        let found = p.roots();
        for root in r {
            assert!(found.iter().any(|z| (z - root).norm() < 1e-10));
        }
    }

    #[test]
    fn deflation_recovers_factor() {
        let p = Poly::from_roots(&[Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.5)]);
        let (quo, rem) = p.deflate(Complex64::new(0.0, 0.5));
        assert!(rem.norm() < 1e-14);
        assert!((quo.eval(&Complex64::new(2.0, 0.0))).norm() < 1e-14);
    }
}
