//! Truncated series in the half-unit shift operator `D`, with `D f = f^- D`.

use std::collections::BTreeMap;

use super::coeff::{Coeff, Field};
use super::ratfn::SpectralFunction;
use crate::error::{Error, Result};

/// `sum_m c_m D^m` for `m <= order`. Coefficients sit to the left of the
/// operator powers.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftSeries<C: Coeff> {
    terms: BTreeMap<usize, SpectralFunction<C>>,
    order: usize,
}

impl<C: Coeff> ShiftSeries<C> {
    pub fn zero(order: usize) -> Self {
        ShiftSeries {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::term(SpectralFunction::one(), 0, order)
    }

    /// Single term `c D^power` (dropped if `power > order`).
    pub fn term(c: SpectralFunction<C>, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.insert(power, c);
        s
    }

    /// `D f D = f^{[-1]} D^2`.
    pub fn sandwich(f: &SpectralFunction<C>, order: usize) -> Self {
        Self::term(f.shift(-1), 2, order)
    }

    fn insert(&mut self, power: usize, c: SpectralFunction<C>) {
        if power > self.order || c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .remove(&power)
            .unwrap_or_else(SpectralFunction::zero);
        let sum = entry + c;
        if !sum.is_zero() {
            self.terms.insert(power, sum);
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, power: usize) -> SpectralFunction<C> {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(SpectralFunction::zero)
    }

    pub fn powers(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.min(other.order));
        for (&p, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(p, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ShiftSeries {
            terms: self.terms.iter().map(|(&p, c)| (p, -c.clone())).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `(c D^m)(d D^n) = c d^{[-m]} D^{m+n}`, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (&m, c) in &self.terms {
            if m > order {
                break;
            }
            for (&n, d) in &other.terms {
                if m + n > order {
                    break;
                }
                out.insert(m + n, c.clone() * d.shift(-(m as i64)));
            }
        }
        out
    }

    /// Same series viewed at a different truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        ShiftSeries {
            terms: self
                .terms
                .range(..=order)
                .map(|(&p, c)| (p, c.clone()))
                .collect(),
            order,
        }
    }
}

/// `S = (1 - terms)^{-1}` as the geometric series `sum_n terms^n`.
///
/// `terms` must have no `D^0` component; then `terms^n` starts at `D^n`
/// and the sum is finite at the given order.
pub fn series_from_inverse<C: Coeff>(
    terms: &ShiftSeries<C>,
    order: usize,
) -> Result<ShiftSeries<C>> {
    if !terms.coeff(0).is_zero() {
        return Err(Error::NonInvertibleSeries);
    }
    let x = terms.truncate(order);
    let mut sum = ShiftSeries::one(order);
    let mut power = ShiftSeries::one(order);
    for _ in 0..order {
        power = power.mul(&x);
        if power.terms.is_empty() {
            break;
        }
        sum = sum.add(&power);
    }
    Ok(sum)
}

/// `T_k` from `W = sum_k D^k T_k D^k`: the `D^{2k}` coefficient is `T_k^{[-k]}`.
pub fn extract_tk<C: Coeff>(w: &ShiftSeries<C>, k: usize) -> Result<SpectralFunction<C>> {
    if w.order() < 2 * k {
        return Err(Error::TruncationTooLow {
            needed: 2 * k,
            have: w.order(),
        });
    }
    Ok(w.coeff(2 * k).shift(k as i64))
}

/// `W_diag = (1 - D B D)^{-1} (1 - D A D)^{-1}`.
pub fn generating_diag<C: Coeff>(
    a: &SpectralFunction<C>,
    b: &SpectralFunction<C>,
    order: usize,
) -> Result<ShiftSeries<C>> {
    let sb = series_from_inverse(&ShiftSeries::sandwich(b, order), order)?;
    let sa = series_from_inverse(&ShiftSeries::sandwich(a, order), order)?;
    Ok(sb.mul(&sa))
}

/// `W = [1 - D(A+B+C)D + D A D^2 B D]^{-1}`.
pub fn generating_inhom<C: Coeff>(
    a: &SpectralFunction<C>,
    b: &SpectralFunction<C>,
    c: &SpectralFunction<C>,
    order: usize,
) -> Result<ShiftSeries<C>> {
    let linear = ShiftSeries::sandwich(&(a.clone() + b.clone() + c.clone()), order);
    // D A D^2 B D = A^{[-1]} D^3 B D = A^{[-1]} B^{[-3]} D^4
    let quadratic = ShiftSeries::term(a.shift(-1) * b.shift(-3), 4, order);
    series_from_inverse(&linear.sub(&quadratic), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{GaussRat, Poly};

    type F = SpectralFunction<GaussRat>;

    fn sample(n: i64) -> F {
        F::new(
            Poly::from_coeffs(vec![
                GaussRat::from_i64(n),
                GaussRat::from_parts(1, 3, 1, 2),
            ]),
            Poly::linear(GaussRat::from_i64(n + 2)),
        )
    }

    #[test]
    fn inverse_of_zero_is_one() {
        let s = series_from_inverse(&ShiftSeries::<GaussRat>::zero(6), 6).unwrap();
        assert_eq!(s, ShiftSeries::one(6));
    }

    #[test]
    fn rejects_constant_term() {
        let x = ShiftSeries::term(sample(1), 0, 4);
        assert!(matches!(
            series_from_inverse(&x, 4),
            Err(Error::NonInvertibleSeries)
        ));
    }

    #[test]
    fn geometric_inverse_residual_vanishes() {
        let order = 5;
        let x = ShiftSeries::term(sample(3), 1, order);
        let s = series_from_inverse(&x, order).unwrap();
        assert_eq!(s.coeff(2), sample(3) * sample(3).shift(-1));
        let one_minus = ShiftSeries::one(order).sub(&x);
        assert_eq!(one_minus.mul(&s), ShiftSeries::one(order));
        assert_eq!(s.mul(&one_minus), ShiftSeries::one(order));
    }

    #[test]
    fn commutation_rule() {
        let d = ShiftSeries::term(F::one(), 1, 3);
        let f = ShiftSeries::term(sample(1), 0, 3);
        assert_eq!(d.mul(&f), ShiftSeries::term(sample(1).shift(-1), 1, 3));
    }

    #[test]
    fn extract_needs_order() {
        let w = ShiftSeries::<GaussRat>::one(3);
        assert!(extract_tk(&w, 2).is_err());
        assert_eq!(extract_tk(&w, 0).unwrap(), F::one());
    }
}
