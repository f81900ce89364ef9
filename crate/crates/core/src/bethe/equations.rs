//! Bethe equations at the roots of `Q`, reconstruction of `T_1` from `Q`,
//! and Newton polishing of roots.

use nalgebra::{DMatrix, DVector};

use super::solve::QFunction;
use crate::chain::C64;
use crate::error::{Error, Result};
use crate::specfun::{FloatFn, Poly, SpectralFunction};

const SINGULAR: f64 = 1e-12;
const NEAR_POLE: f64 = 1e-8;

/// Bethe equation at one root: `value = 0` certifies the root; `scale` is
/// the largest term entering `value`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootResidual {
    pub root: C64,
    pub value: C64,
    pub scale: f64,
}

impl RootResidual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.norm()
        } else {
            self.value.norm() / self.scale
        }
    }
}

/// Largest relative residual of a list; 0 for the empty list.
pub fn max_relative(rs: &[RootResidual]) -> f64 {
    rs.iter().map(RootResidual::relative).fold(0.0, f64::max)
}

fn check_distinct(roots: &[C64]) -> Result<()> {
    for (a, &x) in roots.iter().enumerate() {
        for &y in &roots[a + 1..] {
            if (x - y).norm() < SINGULAR {
                return Err(Error::SingularRoot(format!("coincident roots at {x}")));
            }
        }
    }
    Ok(())
}

/// `((u_k + i/2)/(u_k - i/2))^N - Π_{j≠k} (u_k - u_j + i)/(u_k - u_j - i)`.
///
/// The unreduced form `φ̄(u_k) Q(u_k + i) + φ(u_k) Q(u_k - i)` is
/// [`bethe_residual_open`] with the periodic `φ` and `Δ = 0`.
pub fn bethe_residual_periodic(roots: &[C64], n: usize) -> Result<Vec<RootResidual>> {
    check_distinct(roots)?;
    let half = C64::new(0.0, 0.5);
    let i = C64::new(0.0, 1.0);
    roots
        .iter()
        .enumerate()
        .map(|(k, &u)| {
            if (u - half).norm() < SINGULAR || (u + half).norm() < SINGULAR {
                return Err(Error::SingularRoot(format!("root {u} at ±i/2")));
            }
            let lhs = ((u + half) / (u - half)).powi(n as i32);
            let rhs = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &w)| (u - w + i) / (u - w - i))
                .product::<C64>();
            Ok(RootResidual {
                root: u,
                value: lhs - rhs,
                scale: lhs.norm().max(rhs.norm()),
            })
        })
        .collect()
}

/// `φ̄(u_k) Q(u_k + i) + φ(u_k) Q(u_k - i) + Δ(u_k)` for `Q = Π (u - u_j)`,
/// scaled by `max(|φ̄|, |φ|) · max(|Q(u_k ± i)|)` and `|Δ|` at the root.
///
/// At a root where `φ` has its pole the equation is multiplied through by the
/// denominator of `φ` first and evaluated on numerators.
pub fn bethe_residual_open(
    roots: &[C64],
    phi: &FloatFn,
    delta: &FloatFn,
) -> Result<Vec<RootResidual>> {
    let q = Poly::from_roots(roots);
    let bar = phi.bar();
    let i = C64::new(0.0, 1.0);
    roots
        .iter()
        .map(|&u| {
            let (qp, qm) = (q.eval_c64(u + i), q.eval_c64(u - i));
            let den = phi.den().eval_c64(u);
            let den_bar = bar.den().eval_c64(u);
            let [a, b, c] = if den.norm() < NEAR_POLE || den_bar.norm() < NEAR_POLE {
                // Multiply by den(φ)·den(φ̄), whose value vanishes at the pole.
                [
                    bar.num().eval_c64(u) * den,
                    phi.num().eval_c64(u) * den_bar,
                    delta.eval_c64(u) * den * den_bar,
                ]
            } else {
                [bar.eval_c64(u), phi.eval_c64(u), delta.eval_c64(u)]
            };
            let value = a * qp + b * qm + c;
            if !value.is_finite() {
                return Err(Error::SingularRoot(format!("root {u} at a pole of Δ")));
            }
            Ok(RootResidual {
                root: u,
                value,
                scale: (a.norm().max(b.norm()) * qp.norm().max(qm.norm())).max(c.norm()),
            })
        })
        .collect()
}

/// `T_1` rebuilt from `Q` and the remainder of the division by `Q`.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub t1: FloatFn,
    /// Largest remainder coefficient relative to the dividend and to the
    /// coefficients of `|quotient| · |Q|`.
    pub remainder: f64,
}

/// `T_1 = (φ̄ Q^{[2]} + φ Q^{[-2]} + Δ)/Q`, failing when the division leaves a
/// remainder above `tol`.
pub fn reconstruct_t1(
    q: &QFunction,
    phi: &FloatFn,
    delta: &FloatFn,
    tol: f64,
) -> Result<Reconstruction> {
    let qp = &q.q;
    if qp.is_zero() {
        return Err(Error::InvalidParameter {
            name: "Q",
            reason: "zero polynomial".into(),
        });
    }
    let bar = phi.bar();
    let den = &(phi.den() * bar.den()) * delta.den();
    let part = |f: &FloatFn, g: Poly<C64>| &(&den * f.num()).div_rem(f.den()).0 * &g;
    let dividend = part(&bar, qp.shift(2)) + part(phi, qp.shift(-2)) + part(delta, Poly::one());
    let abs = |p: &Poly<C64>| {
        Poly::from_coeffs(p.coeffs().iter().map(|c| C64::new(c.norm(), 0.0)).collect())
    };
    let measure = |quot: &Poly<C64>| {
        let rem = dividend.clone() - quot * qp;
        let scale = dividend
            .max_abs_coeff()
            .max((&abs(quot) * &abs(qp)).max_abs_coeff());
        rem.max_abs_coeff() / scale.max(f64::MIN_POSITIVE)
    };
    let (top_down, _) = dividend.div_rem(qp);
    let (quot, remainder) = [Some(top_down), bottom_up_quotient(&dividend, qp)]
        .into_iter()
        .flatten()
        .map(|q| {
            let r = measure(&q);
            (q, r)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("top-down quotient");
    if remainder > tol {
        return Err(Error::Remainder(remainder));
    }
    Ok(Reconstruction {
        t1: SpectralFunction::new(quot, den),
        remainder,
    })
}

/// Quotient of an exact division computed from the constant term upwards,
/// stable when the roots of `den` are large. `None` when `den(0) = 0`.
fn bottom_up_quotient(num: &Poly<C64>, den: &Poly<C64>) -> Option<Poly<C64>> {
    let (Some(dn), Some(dd)) = (num.degree(), den.degree()) else {
        return Some(Poly::zero());
    };
    let d0 = den.coeff(0);
    if d0.norm() == 0.0 || dn < dd {
        return (dn < dd).then(Poly::zero);
    }
    let mut q: Vec<C64> = Vec::with_capacity(dn - dd + 1);
    for j in 0..=dn - dd {
        let acc = (1..=j.min(dd)).fold(num.coeff(j), |acc, i| acc - den.coeff(i) * q[j - i]);
        q.push(acc / d0);
    }
    Some(Poly::from_coeffs(q))
}

/// Result of a Newton polish.
#[derive(Clone, Debug)]
pub struct NewtonOutcome {
    pub roots: Vec<C64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Damped Newton iteration on `residual_fn(roots) = 0` with a complex
/// finite-difference Jacobian. Stops when the largest residual is `<= tol`.
pub fn refine_roots_newton<F>(
    roots: &[C64],
    residual_fn: F,
    max_iter: usize,
    tol: f64,
) -> Result<NewtonOutcome>
where
    F: Fn(&[C64]) -> Result<Vec<C64>>,
{
    let norm = |v: &[C64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut x = roots.to_vec();
    let mut r = residual_fn(&x)?;
    let mut res = norm(&r);
    for it in 0..max_iter {
        if res <= tol {
            return Ok(NewtonOutcome {
                roots: x,
                iterations: it,
                residual: res,
            });
        }
        let n = x.len();
        let mut jac = DMatrix::<C64>::zeros(r.len(), n);
        for c in 0..n {
            let h = 1e-7 * x[c].norm().max(1.0);
            let mut xp = x.clone();
            xp[c] += h;
            let rp = residual_fn(&xp)?;
            for (row, (a, b)) in rp.iter().zip(&r).enumerate() {
                jac[(row, c)] = (a - b) / h;
            }
        }
        let svd = jac.svd(true, true);
        let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let low = svd
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if top.is_nan() || top <= 0.0 || low <= 1e-10 * top {
            return Err(Error::SingularJacobian);
        }
        let step = svd
            .solve(&DVector::from_vec(r.clone()), 0.0)
            .map_err(|_| Error::SingularJacobian)?;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<C64> = x
                .iter()
                .zip(step.iter())
                .map(|(a, s)| a - s * lambda)
                .collect();
            if let Ok(rt) = residual_fn(&trial) {
                let rn = norm(&rt);
                if rn < res || lambda < 1e-6 {
                    x = trial;
                    r = rt;
                    res = rn;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                return Err(Error::NoConvergence {
                    iterations: it + 1,
                    residual: res,
                });
            }
        }
    }
    if res <= tol {
        Ok(NewtonOutcome {
            roots: x,
            iterations: max_iter,
            residual: res,
        })
    } else {
        Err(Error::NoConvergence {
            iterations: max_iter,
            residual: res,
        })
    }
}
