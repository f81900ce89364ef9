//! Scalar fields underlying every function of the spectral parameter.
//!
//! Two models share one interface: [`GaussRat`], exact Gaussian rationals,
//! and [`Complex64`], complex floats compared against a caller-supplied
//! tolerance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative field. Implemented by both coefficient models and by
/// rational functions over them, so determinant code can run on either.
pub trait Field:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and `is_zero` is a decision, not an estimate.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// Structural zero test (exact equality for floats too).
    fn is_zero(&self) -> bool;
    /// Magnitude used to rank pivots. Exact fields return 1 for any nonzero.
    fn pivot_weight(&self) -> f64;
}

/// Scalar coefficients of polynomials in the spectral parameter.
pub trait Coeff: Field + PartialEq + 'static {
    fn imag_unit() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den` as a real coefficient.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Complex conjugate.
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// `|self| <= tol`; exact models ignore `tol`.
    fn approx_zero(&self, tol: f64) -> bool;
    /// `|Im self| <= tol`; exact models ignore `tol`.
    fn is_real(&self, tol: f64) -> bool;

    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `i k / 2`, the offset implementing one application of `shift(·, k)`.
    fn half_i(k: i64) -> Self {
        Self::imag_unit() * Self::from_ratio(k, 2)
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

impl Coeff for Complex64 {
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn approx_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn is_real(&self, tol: f64) -> bool {
        self.im.abs() <= tol
    }
}

/// Exact Gaussian rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    /// `(re_num/re_den) + i (im_num/im_den)`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRat {
            re: ratio(re_num, re_den),
            im: ratio(im_num, im_den),
        }
    }

    pub fn real(r: BigRational) -> Self {
        GaussRat {
            re: r,
            im: BigRational::zero(),
        }
    }

    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Huge numerator/denominator: fall back to the integer part of a scaled quotient.
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
            let (n, d) = if shift > 0 {
                (r.numer() >> shift as usize, r.denom() >> shift as usize)
            } else {
                (r.numer().clone(), r.denom().clone())
            };
            n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "({} - {}i)", self.re, -&self.im)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(self.re * rhs.re);
        }
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        assert!(!rhs.is_zero(), "division by zero Gaussian rational");
        if rhs.im.is_zero() {
            return GaussRat {
                re: self.re / &rhs.re,
                im: self.im / rhs.re,
            };
        }
        let n = rhs.norm_sqr();
        GaussRat {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &n,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / n,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Field for GaussRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one() -> Self {
        GaussRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Coeff for GaussRat {
    fn imag_unit() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }
    fn from_i64(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat::real(ratio(num, den))
    }
    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn approx_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn is_real(&self, _tol: f64) -> bool {
        self.im.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_axioms_on_samples() {
        let a = GaussRat::from_parts(3, 4, -1, 2);
        let b = GaussRat::from_parts(-5, 3, 7, 9);
        let c = GaussRat::from_parts(1, 7, 0, 1);
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        assert_eq!(a.clone() - a.clone(), GaussRat::zero());
        assert_eq!(
            GaussRat::imag_unit() * GaussRat::imag_unit(),
            GaussRat::from_i64(-1)
        );
    }

    #[test]
    fn half_i_offsets() {
        assert_eq!(GaussRat::half_i(2), GaussRat::imag_unit());
        assert_eq!(Complex64::half_i(-1), Complex64::new(0.0, -0.5));
    }

    #[test]
    fn float_tolerance_semantics() {
        let z = Complex64::new(1e-12, -1e-12);
        assert!(z.approx_zero(1e-9));
        assert!(!Field::is_zero(&z));
        assert!(Complex64::new(2.0, 1e-11).is_real(1e-9));
    }

    #[test]
    fn conversion_of_large_rationals() {
        let big = BigRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399) * 4);
        let g = GaussRat::real(big);
        assert!((g.to_c64().re - 2.5).abs() < 1e-12);
    }
}
