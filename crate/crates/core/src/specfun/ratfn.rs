//! Rational functions of the spectral parameter.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::coeff::{Coeff, Field};
use super::poly::Poly;

/// `num(u) / den(u)` with a monic denominator.
///
/// The exact model keeps `gcd(num, den) = 1`. The float model only cancels
/// common powers of `u`, since a floating gcd is not stable.
#[derive(Clone, PartialEq)]
pub struct SpectralFunction<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Coeff> SpectralFunction<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "spectral function with zero denominator");
        let mut f = SpectralFunction { num, den };
        f.reduce();
        f
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        SpectralFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn u() -> Self {
        Self::from_poly(Poly::u())
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<C>, Poly<C>) {
        (self.num, self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if C::EXACT {
            if !self.den.is_constant() {
                let g = self.num.gcd(&self.den);
                if !g.is_constant() {
                    self.num = self.num.div_rem(&g).0;
                    self.den = self.den.div_rem(&g).0;
                }
            }
        } else {
            let m = self.num.valuation().min(self.den.valuation());
            if m > 0 {
                self.num = self.num.drop_low(m);
                self.den = self.den.drop_low(m);
            }
        }
        let lead = self.den.leading().cloned().expect("nonzero denominator");
        if !(lead.clone() - C::one()).is_zero() {
            let inv = C::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn eval(&self, u: &C) -> C {
        self.num.eval(u) / self.den.eval(u)
    }

    pub fn eval_c64(&self, u: Complex64) -> Complex64 {
        self.num.eval_c64(u) / self.den.eval_c64(u)
    }

    /// `f^{[k]}(u) = f(u + i k / 2)`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut f = SpectralFunction {
            num: self.num.shift(k),
            den: self.den.shift(k),
        };
        f.reduce();
        f
    }

    /// `conj(f(conj u))`.
    pub fn bar(&self) -> Self {
        SpectralFunction {
            num: self.num.bar(),
            den: self.den.bar(),
        }
    }

    pub fn is_real_analytic(&self, tol: f64) -> bool {
        self.num.is_real_analytic(tol) && self.den.is_real_analytic(tol)
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut f = SpectralFunction {
            num: self.num.scale(s),
            den: self.den.clone(),
        };
        f.reduce();
        f
    }

    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of the zero function");
        SpectralFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Product of a list of functions; the empty product is 1.
    pub fn product<'a>(items: impl IntoIterator<Item = &'a SpectralFunction<C>>) -> Self {
        items
            .into_iter()
            .fold(Self::one(), |acc, f| acc * f.clone())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SpectralFunction<D> {
        SpectralFunction::new(self.num.map(&f), self.den.map(&f))
    }

    pub fn to_c64(&self) -> SpectralFunction<Complex64> {
        self.map(|c| c.to_c64())
    }
}

impl<C: Coeff> Add for SpectralFunction<C> {
    type Output = SpectralFunction<C>;
    fn add(self, rhs: SpectralFunction<C>) -> SpectralFunction<C> {
        if self.num.is_zero() {
            return rhs;
        }
        if rhs.num.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return SpectralFunction::new(self.num + rhs.num, self.den);
        }
        let num = &self.num * &rhs.den + &rhs.num * &self.den;
        SpectralFunction::new(num, &self.den * &rhs.den)
    }
}

impl<C: Coeff> Sub for SpectralFunction<C> {
    type Output = SpectralFunction<C>;
    fn sub(self, rhs: SpectralFunction<C>) -> SpectralFunction<C> {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for SpectralFunction<C> {
    type Output = SpectralFunction<C>;
    fn neg(self) -> SpectralFunction<C> {
        SpectralFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<C: Coeff> Mul for SpectralFunction<C> {
    type Output = SpectralFunction<C>;
    fn mul(self, rhs: SpectralFunction<C>) -> SpectralFunction<C> {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return SpectralFunction {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        if C::EXACT {
            // Cross-cancel before multiplying so the gcds stay small.
            let g1 = self.num.gcd(&rhs.den);
            let g2 = rhs.num.gcd(&self.den);
            let (a, d) = (self.num.div_rem(&g1).0, rhs.den.div_rem(&g1).0);
            let (c, b) = (rhs.num.div_rem(&g2).0, self.den.div_rem(&g2).0);
            let mut f = SpectralFunction {
                num: &a * &c,
                den: &b * &d,
            };
            let lead = f.den.leading().cloned().expect("nonzero denominator");
            let inv = C::one() / lead;
            f.num = f.num.scale(&inv);
            f.den = f.den.scale(&inv);
            return f;
        }
        SpectralFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<C: Coeff> Div for SpectralFunction<C> {
    type Output = SpectralFunction<C>;
    fn div(self, rhs: SpectralFunction<C>) -> SpectralFunction<C> {
        Mul::mul(self, rhs.recip())
    }
}

impl<C: Coeff> Field for SpectralFunction<C> {
    const EXACT: bool = C::EXACT;

    fn zero() -> Self {
        SpectralFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn one() -> Self {
        SpectralFunction {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn pivot_weight(&self) -> f64 {
        if self.num.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl<C: Coeff> From<Poly<C>> for SpectralFunction<C> {
    fn from(p: Poly<C>) -> Self {
        SpectralFunction::from_poly(p)
    }
}

impl<C: Coeff> fmt::Debug for SpectralFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

fn pairs<C: Coeff>(p: &Poly<C>) -> Vec<[f64; 2]> {
    p.coeffs()
        .iter()
        .map(|c| {
            let z = c.to_c64();
            [z.re, z.im]
        })
        .collect()
}

/// Serialized as `{"num": [[re, im], ...], "den": [[re, im], ...]}`, ascending powers.
impl<C: Coeff> Serialize for SpectralFunction<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SpectralFunction", 2)?;
        st.serialize_field("num", &pairs(&self.num))?;
        st.serialize_field("den", &pairs(&self.den))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::GaussRat;

    type F = SpectralFunction<GaussRat>;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_i64(n)
    }

    #[test]
    fn exact_reduction_cancels_common_factors() {
        let common = Poly::linear(GaussRat::half_i(1));
        let num = &common * &Poly::linear(g(3));
        let den = &common * &Poly::linear(g(-2));
        let f = F::new(num, den);
        assert_eq!(f.den(), &Poly::linear(g(-2)));
        assert_eq!(f.num(), &Poly::linear(g(3)));
    }

    #[test]
    fn float_reduction_only_removes_u_powers() {
        let u = Poly::<Complex64>::u();
        let lin = Poly::linear(Complex64::new(1.0, 0.0));
        let f = SpectralFunction::new(&u * &lin, &u * &lin);
        assert_eq!(f.den().degree(), Some(1));
    }

    #[test]
    fn shift_and_bar_commute_with_sign_flip() {
        let f = F::new(
            Poly::from_coeffs(vec![GaussRat::from_parts(1, 2, 3, 1), g(2)]),
            Poly::linear(GaussRat::half_i(3)),
        );
        assert_eq!(f.shift(2).bar(), f.bar().shift(-2));
    }

    #[test]
    fn serialization_schema() {
        let f =
            SpectralFunction::<Complex64>::new(Poly::u(), Poly::linear(Complex64::new(0.0, 0.5)));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"num":[[0.0,0.0],[1.0,0.0]],"den":[[0.0,0.5],[1.0,0.0]]}"#
        );
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = F::new(
            Poly::from_coeffs(vec![g(1), g(2)]),
            Poly::from_roots(&[g(3)]),
        );
        let b = F::new(
            Poly::from_coeffs(vec![g(-4), g(0), g(1)]),
            Poly::from_roots(&[g(3), g(1)]),
        );
        assert_eq!((a.clone() + b.clone()) - b.clone(), a);
        assert_eq!((a.clone() * b.clone()) / b, a);
    }
}
