//! Polynomial `Q` from a known `T_1`: the T-Q relation is linear in the
//! coefficients of `Q` once `T_1`, `φ` and `Δ` are fixed.

use nalgebra::{DMatrix, DVector};

use crate::chain::C64;
use crate::chain::{SpectralFamily, Topology};
use crate::error::{Error, Result};
use crate::specfun::{Field, FloatFn, Poly};

const RANK_TOL: f64 = 1e-10;
const ROOT_SNAP: f64 = 1e-12;
const PAIR_TOL: f64 = 1e-9;

/// A monic `Q` with its roots.
#[derive(Clone, Debug)]
pub struct QFunction {
    pub q: Poly<C64>,
    pub roots: Vec<C64>,
    /// Roots were extracted as `±√w` from an even `Q`.
    pub paired: bool,
    /// Largest odd coefficient relative to the largest coefficient.
    pub pairing_defect: f64,
    /// Largest imaginary part of a coefficient relative to the largest coefficient.
    pub imag_defect: f64,
    /// Relative T-Q residual at the solution.
    pub residual: f64,
}

impl QFunction {
    /// Root data of a monic polynomial. An even polynomial gets its roots
    /// as `±√w` over the roots `w` of `Q(√w)`, so they pair exactly.
    pub fn from_poly(q: Poly<C64>) -> Self {
        let scale = q.max_abs_coeff().max(f64::MIN_POSITIVE);
        let imag_defect = q.coeffs().iter().map(|c| c.im.abs()).fold(0.0, f64::max) / scale;
        let pairing_defect = q
            .coeffs()
            .iter()
            .skip(1)
            .step_by(2)
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            / scale;
        let even = pairing_defect <= PAIR_TOL && q.degree().is_some_and(|d| d % 2 == 0);
        let roots = if even {
            let half = Poly::from_coeffs(q.coeffs().iter().step_by(2).copied().collect());
            let mut out: Vec<C64> = half
                .roots()
                .into_iter()
                .flat_map(|w| {
                    let s = w.sqrt();
                    [s, -s]
                })
                .collect();
            out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            out
        } else {
            q.roots()
        };
        QFunction {
            q,
            roots,
            paired: even,
            pairing_defect,
            imag_defect,
            residual: 0.0,
        }
    }

    pub fn degree(&self) -> usize {
        self.q.degree().unwrap_or(0)
    }
}

/// Polynomial pieces of the T-Q relation after clearing denominators:
/// `T·Q - φ̄_n·Q^{[2]} - φ_n·Q^{[-2]} = rhs`.
struct Cleared {
    t: Poly<C64>,
    phi_bar: Poly<C64>,
    phi: Poly<C64>,
    rhs: Poly<C64>,
}

fn clear_denominators(t1: &FloatFn, phi: &FloatFn, delta: &FloatFn) -> Cleared {
    let bar = phi.bar();
    let den = &(&(t1.den() * phi.den()) * bar.den()) * delta.den();
    let times = |f: &FloatFn| {
        let (q, _) = (&den * f.num()).div_rem(f.den());
        q
    };
    Cleared {
        t: times(t1),
        phi_bar: times(&bar),
        phi: times(phi),
        rhs: times(delta),
    }
}

fn column(c: &Cleared, m: usize) -> Poly<C64> {
    let u = Poly::monomial(C64::new(1.0, 0.0), m);
    (&c.t * &u) - (&c.phi_bar * &u.shift(2)) - (&c.phi * &u.shift(-2))
}

/// Solves `T_1 Q - φ̄ Q^{[2]} - φ Q^{[-2]} - Δ = 0` for monic `Q` of the given
/// degree. With `Δ = 0` the solution is the one-dimensional null space of
/// the coefficient map; otherwise the inhomogeneous system is solved.
pub fn solve_q_linear(
    t1: &FloatFn,
    phi: &FloatFn,
    delta: &FloatFn,
    degree: usize,
    tol: f64,
) -> Result<QFunction> {
    let cleared = clear_denominators(t1, phi, delta);
    let cols: Vec<Poly<C64>> = (0..=degree).map(|m| column(&cleared, m)).collect();
    let rows = cols
        .iter()
        .chain(std::iter::once(&cleared.rhs))
        .map(|p| p.coeffs().len())
        .max()
        .unwrap_or(0)
        .max(1);
    let raw_norms: Vec<f64> = cols.iter().map(|p| p.max_abs_coeff()).collect();
    let largest = raw_norms.iter().copied().fold(f64::MIN_POSITIVE, f64::max);
    // A column vanishing to rounding is left unscaled rather than blown up.
    let norms: Vec<f64> = raw_norms
        .iter()
        .map(|&n| if n <= RANK_TOL * largest { largest } else { n })
        .collect();
    let a = DMatrix::from_fn(rows, degree + 1, |i, j| cols[j].coeff(i) / norms[j]);
    let homogeneous = delta.is_zero();

    let coeffs: Vec<C64> = if homogeneous {
        let svd = a.clone().svd(false, true);
        let sv = &svd.singular_values;
        let top = sv
            .iter()
            .copied()
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut order: Vec<usize> = (0..sv.len()).collect();
        order.sort_by(|&x, &y| sv[x].total_cmp(&sv[y]));
        let small = order.iter().filter(|&&i| sv[i] <= RANK_TOL * top).count()
            + (degree + 1).saturating_sub(sv.len());
        if small > 1 {
            return Err(Error::DegenerateNullSpace(small));
        }
        let vt = svd.v_t.ok_or(Error::SingularJacobian)?;
        let v: Vec<C64> = vt.row(order[0]).iter().map(|z| z.conj()).collect();
        let scaled: Vec<C64> = v.iter().zip(&norms).map(|(z, n)| z / n).collect();
        let lead = scaled[degree];
        if lead.norm() <= RANK_TOL * scaled.iter().map(|z| z.norm()).fold(0.0, f64::max) {
            return Err(Error::NoSolution {
                degree,
                residual: f64::INFINITY,
            });
        }
        scaled.iter().map(|z| z / lead).collect()
    } else {
        let a_low = a.columns(0, degree).into_owned();
        let b = DVector::from_fn(rows, |i, _| cleared.rhs.coeff(i) - cols[degree].coeff(i));
        let mut x = vec![C64::new(0.0, 0.0); degree];
        if degree > 0 {
            let svd = a_low.svd(true, true);
            let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
            let small = svd
                .singular_values
                .iter()
                .filter(|&&s| s <= RANK_TOL * top)
                .count();
            if small > 0 {
                return Err(Error::DegenerateNullSpace(small));
            }
            let sol = svd
                .solve(&b, RANK_TOL * top)
                .map_err(|_| Error::SingularJacobian)?;
            for (j, v) in x.iter_mut().enumerate() {
                *v = sol[j] / norms[j];
            }
        }
        x.push(C64::new(1.0, 0.0));
        x
    };

    let q = Poly::from_coeffs(coeffs.iter().map(|z| snap(*z)).collect());
    let residual = tq_relative(&cleared, &q);
    if residual > tol {
        return Err(Error::NoSolution { degree, residual });
    }
    let mut out = QFunction::from_poly(q);
    out.residual = residual;
    Ok(out)
}

fn snap(z: C64) -> C64 {
    C64::new(
        if z.re.abs() < ROOT_SNAP { 0.0 } else { z.re },
        if z.im.abs() < ROOT_SNAP { 0.0 } else { z.im },
    )
}

/// Largest coefficient of the cleared T-Q residual, relative to its terms.
fn tq_relative(c: &Cleared, q: &Poly<C64>) -> f64 {
    let terms = [
        &c.t * q,
        -(&c.phi_bar * &q.shift(2)),
        -(&c.phi * &q.shift(-2)),
        -c.rhs.clone(),
    ];
    let scale = terms
        .iter()
        .map(|p| p.max_abs_coeff())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let sum = terms.into_iter().fold(Poly::zero(), |acc, p| acc + p);
    sum.max_abs_coeff() / scale
}

/// Degrees tried for a family: `0..=N/2` (periodic), `2N` (open, `Δ ≠ 0`)
/// or the even degrees `0, 2, …, 2N` (open, `Δ = 0`).
pub fn candidate_degrees(topology: Topology, n: usize, inhomogeneous: bool) -> Vec<usize> {
    match topology {
        Topology::Periodic => (0..=n / 2).collect(),
        Topology::Open if inhomogeneous => vec![2 * n],
        Topology::Open => (0..=n).map(|m| 2 * m).collect(),
    }
}

/// Smallest candidate degree admitting a unique monic `Q` for the family's `T_1`.
pub fn solve_q_for_family(f: &SpectralFamily, n: usize, tol: f64) -> Result<QFunction> {
    let t1 = f.tk(1)?;
    let inhomogeneous = !f.delta.is_zero();
    let mut last = Error::NoSolution {
        degree: 0,
        residual: f64::INFINITY,
    };
    for degree in candidate_degrees(f.topology, n, inhomogeneous) {
        match solve_q_linear(&t1, &f.phi, &f.delta, degree, tol) {
            Ok(q) => return Ok(q),
            Err(e) => last = e,
        }
    }
    Err(last)
}
