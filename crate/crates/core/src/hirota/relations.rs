//! Residual evaluators for the bilinear relations, the auxiliary linear
//! problems, the T-Q equations and the closed-form `T_k` reconstructions.

use num_complex::Complex64;
use serde::Serialize;

use super::scalars::aux_factors;
use crate::chain::SpectralFamily;
use crate::error::{Error, Result};
use crate::specfun::{Coeff, Field, Poly, SpectralFunction};

/// Signed terms whose sum is the left-minus-right side of a relation.
#[derive(Clone, Debug)]
pub struct Residual<C: Coeff> {
    terms: Vec<SpectralFunction<C>>,
}

impl<C: Coeff> Residual<C> {
    pub fn new(terms: Vec<SpectralFunction<C>>) -> Self {
        Residual { terms }
    }

    pub fn terms(&self) -> &[SpectralFunction<C>] {
        &self.terms
    }

    pub fn value(&self) -> SpectralFunction<C> {
        self.terms
            .iter()
            .cloned()
            .fold(SpectralFunction::zero(), |acc, t| acc + t)
    }

    /// Exact vanishing (the float model compares bit patterns).
    pub fn is_zero(&self) -> bool {
        self.value().is_zero()
    }

    /// `max_s |Σ terms(u_s)|`.
    pub fn absolute(&self, points: &[Complex64]) -> f64 {
        points
            .iter()
            .map(|&u| {
                self.terms
                    .iter()
                    .map(|t| t.eval_c64(u))
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// `max_s |Σ terms(u_s)|` divided by `max_s max_t |term_t(u_s)|`.
    pub fn relative(&self, points: &[Complex64]) -> f64 {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for &u in points {
            let vals: Vec<Complex64> = self.terms.iter().map(|t| t.eval_c64(u)).collect();
            worst = worst.max(vals.iter().sum::<Complex64>().norm());
            scale = vals.iter().map(|z| z.norm()).fold(scale, f64::max);
        }
        if scale == 0.0 {
            worst
        } else {
            worst / scale
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LaxVariant {
    Periodic,
    OpenHom,
    OpenInhom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LaxSide {
    First,
    Second,
}

impl LaxVariant {
    pub fn name(self) -> &'static str {
        match self {
            LaxVariant::Periodic => "periodic",
            LaxVariant::OpenHom => "open-hom",
            LaxVariant::OpenInhom => "open-inhom",
        }
    }
}

impl LaxSide {
    pub fn name(self) -> &'static str {
        match self {
            LaxSide::First => "first",
            LaxSide::Second => "second",
        }
    }
}

/// One auxiliary linear equation evaluated on a family and a `Q`.
#[derive(Clone, Debug)]
pub struct LaxWitness<C: Coeff> {
    pub label: String,
    pub q: Poly<C>,
    pub variant: LaxVariant,
    pub side: LaxSide,
    pub k: usize,
    pub residual: Residual<C>,
}

/// `bar Q = Q`, to a tolerance relative to the largest coefficient.
pub fn check_real_analytic<C: Coeff>(q: &Poly<C>) -> Result<()> {
    let scale = q.max_abs_coeff();
    let worst = q
        .coeffs()
        .iter()
        .map(|c| c.to_c64().im.abs())
        .fold(0.0, f64::max);
    let ok = if C::EXACT {
        q.is_real_analytic(0.0)
    } else {
        worst <= 1e-9 * scale.max(1.0)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotRealAnalytic(worst))
    }
}

/// `T_k^+ T_k^- - T_{k+1} T_{k-1} - rhs_k`.
pub fn hirota_residual<C: Coeff>(f: &SpectralFamily<C>, k: usize) -> Result<Residual<C>> {
    let ki = k as i64;
    let tk = f.tk(ki)?;
    Ok(Residual::new(vec![
        tk.shift(1) * tk.shift(-1),
        -(f.tk(ki + 1)? * f.tk(ki - 1)?),
        -f.hirota_rhs(k)?,
    ]))
}

/// `H_{k,a} = T_{k+1} T_{k-a-1}^{[a]} - T_k^- T_{k-a}^{[a+1]} + T_{2,k-a}^{[a]} T_a^{[a-k-1]}`.
pub fn hirota_like_residual<C: Coeff>(
    f: &SpectralFamily<C>,
    k: usize,
    a: usize,
) -> Result<Residual<C>> {
    if a >= k {
        return Err(Error::Index(format!(
            "hirota-like relation needs a < k, got k = {k}, a = {a}"
        )));
    }
    let (ki, ai) = (k as i64, a as i64);
    Ok(Residual::new(vec![
        f.tk(ki + 1)? * f.tk(ki - ai - 1)?.shift(ai),
        -(f.tk(ki)?.shift(-1) * f.tk(ki - ai)?.shift(ai + 1)),
        f.t2k(ki - ai)?.shift(ai) * f.tk(ai)?.shift(ai - ki - 1),
    ]))
}

/// Literal left-minus-right side of one auxiliary linear equation.
pub fn lax_residual<C: Coeff>(
    f: &SpectralFamily<C>,
    q: &Poly<C>,
    k: usize,
    variant: LaxVariant,
    side: LaxSide,
) -> Result<LaxWitness<C>> {
    check_real_analytic(q)?;
    let ki = k as i64;
    let qf = SpectralFunction::from_poly(q.clone());
    let qs = |m: i64| qf.shift(m);
    let t = |m: i64| f.tk(m);
    let phi = &f.phi;
    let bar = &f.phi_bar;
    let mut terms = match (variant, side) {
        (LaxVariant::Periodic, LaxSide::First) => vec![
            t(ki + 1)? * qs(ki),
            -(t(ki)?.shift(-1) * qs(ki + 2)),
            -(phi.shift(ki) * qs(-ki - 2)),
        ],
        (LaxVariant::Periodic, LaxSide::Second) => vec![
            t(ki - 1)? * qs(-ki - 2),
            -(t(ki)?.shift(-1) * qs(-ki)),
            bar.shift(-ki) * qs(ki),
        ],
        (_, LaxSide::First) => {
            let aux = aux_factors(phi, k);
            vec![
                t(ki + 1)? * qs(ki),
                -(bar.shift(ki) * t(ki)?.shift(-1) * qs(ki + 2)),
                -(aux.x[k].clone() * qs(-ki - 2)),
            ]
        }
        (_, LaxSide::Second) => {
            let aux = aux_factors(phi, k);
            vec![
                phi.shift(-ki) * t(ki - 1)? * qs(-ki - 2),
                -(t(ki)?.shift(-1) * qs(-ki)),
                aux.y[k].clone() * qs(ki),
            ]
        }
    };
    if variant == LaxVariant::OpenInhom {
        terms.extend(inhomogeneous_terms(f, k, side)?);
    }
    Ok(LaxWitness {
        label: f.label.clone(),
        q: q.clone(),
        variant,
        side,
        k,
        residual: Residual::new(terms),
    })
}

/// The `Δ`-dependent terms of the inhomogeneous system, moved to the left side.
fn inhomogeneous_terms<C: Coeff>(
    f: &SpectralFamily<C>,
    k: usize,
    side: LaxSide,
) -> Result<Vec<SpectralFunction<C>>> {
    let ki = k as i64;
    let delta = &f.delta;
    if delta.is_zero() {
        return Ok(Vec::new());
    }
    match side {
        LaxSide::First => {
            let aux = aux_factors(&f.phi, k);
            (0..=k)
                .map(|l| {
                    let li = l as i64;
                    Ok(-(aux.psi(l, k).clone()
                        * delta.shift(2 * li - ki)
                        * f.tk(li)?.shift(li - ki - 1)))
                })
                .collect()
        }
        LaxSide::Second if k == 0 => Ok(Vec::new()),
        LaxSide::Second => {
            let aux = aux_factors(&f.phi, k - 1);
            (0..k)
                .map(|l| {
                    let li = l as i64;
                    Ok(aux.psi_bar(l, k - 1).shift(-1)
                        * delta.shift(ki - 2 * li - 2)
                        * f.tk(li)?.shift(ki - li - 1))
                })
                .collect()
        }
    }
}

/// `(T_k^+ T_k^- - T_{k+1} T_{k-1} - T_{2,k}) φ^{[-k]} Q^{[-k-2]}
/// - Σ_a Δ^{[2a-k]} (Π_{j<a} φ̄^{[2j-k]}) H_{k,a}`.
///
/// Vanishes whenever both inhomogeneous auxiliary equations hold at the
/// levels involved; see [`compatibility_decomposition`].
pub fn compatibility_residual<C: Coeff>(
    f: &SpectralFamily<C>,
    q: &Poly<C>,
    k: usize,
) -> Result<Residual<C>> {
    check_real_analytic(q)?;
    let ki = k as i64;
    let tk = f.tk(ki)?;
    let lead = f.phi.shift(-ki) * SpectralFunction::from_poly(q.shift(-ki - 2));
    let mut terms = vec![
        tk.shift(1) * tk.shift(-1) * lead.clone(),
        -(f.tk(ki + 1)? * f.tk(ki - 1)? * lead.clone()),
        -(f.t2k(ki)? * lead),
    ];
    if !f.delta.is_zero() {
        for a in 0..k {
            let ai = a as i64;
            let run = (0..ai).fold(SpectralFunction::one(), |acc, j| {
                acc * f.phi_bar.shift(2 * j - ki)
            });
            let weight = f.delta.shift(2 * ai - ki) * run;
            for h in hirota_like_residual(f, k, a)?.terms {
                terms.push(-(weight.clone() * h));
            }
        }
    }
    Ok(Residual::new(terms))
}

/// The same quantity rewritten through the inhomogeneous auxiliary residuals
/// `E1_k` (first) and `E2_k` (second):
/// `T_k^- E2_{k+1}^{+} - T_{k+1} E2_k + Y_k E1_k`.
pub fn compatibility_decomposition<C: Coeff>(
    f: &SpectralFamily<C>,
    q: &Poly<C>,
    k: usize,
) -> Result<SpectralFunction<C>> {
    let ki = k as i64;
    let e1 = lax_residual(f, q, k, LaxVariant::OpenInhom, LaxSide::First)?
        .residual
        .value();
    let e2 = lax_residual(f, q, k, LaxVariant::OpenInhom, LaxSide::Second)?
        .residual
        .value();
    let e2_next = lax_residual(f, q, k + 1, LaxVariant::OpenInhom, LaxSide::Second)?
        .residual
        .value();
    let y = aux_factors(&f.phi, k).y[k].clone();
    Ok(f.tk(ki)?.shift(-1) * e2_next.shift(1) - f.tk(ki + 1)? * e2 + y * e1)
}

/// `T_1 Q - φ̄ Q^{[2]} - φ Q^{[-2]} - Δ` with `φ̄ = bar φ`.
pub fn tq_residual<C: Coeff>(
    t1: &SpectralFunction<C>,
    q: &Poly<C>,
    phi: &SpectralFunction<C>,
    delta: &SpectralFunction<C>,
) -> Residual<C> {
    let qf = SpectralFunction::from_poly(q.clone());
    Residual::new(vec![
        t1.clone() * qf.clone(),
        -(phi.bar() * qf.shift(2)),
        -(phi.clone() * qf.shift(-2)),
        -delta.clone(),
    ])
}

/// `Σ_{l=0}^{k} Π_{j=0}^{k-l-1} B^{[k-1-2j]} Π_{i=0}^{l-1} A^{[2l-k-1-2i]}`.
pub fn tk_from_q_diag<C: Coeff>(
    a: &SpectralFunction<C>,
    b: &SpectralFunction<C>,
    k: usize,
) -> SpectralFunction<C> {
    let ki = k as i64;
    (0..=ki).fold(SpectralFunction::zero(), |acc, l| {
        let bs = (0..ki - l).fold(SpectralFunction::one(), |p, j| p * b.shift(ki - 1 - 2 * j));
        let as_ = (0..l).fold(SpectralFunction::one(), |p, i| {
            p * a.shift(2 * l - ki - 1 - 2 * i)
        });
        acc + bs * as_
    })
}

/// `det M^{(k)}` for the tridiagonal matrix with diagonal `T_1^{[k+1-2i]}`,
/// superdiagonal `φ^{[k+1-2i]}` and subdiagonal `φ̄^{[k+1-2i]}`, by the
/// three-term continuant recursion. `k = 0` gives 1.
pub fn det_solution<C: Coeff>(
    t1: &SpectralFunction<C>,
    phi: &SpectralFunction<C>,
    k: usize,
) -> SpectralFunction<C> {
    let ki = k as i64;
    let bar = phi.bar();
    let diag = |i: i64| t1.shift(ki + 1 - 2 * i);
    let mut prev = SpectralFunction::one();
    let mut cur = SpectralFunction::one();
    for i in 1..=ki {
        let next = if i == 1 {
            diag(1)
        } else {
            // M_{i-1,i} M_{i,i-1} = φ^{[k+3-2i]} φ̄^{[k+1-2i]}.
            diag(i) * cur.clone()
                - phi.shift(ki + 3 - 2 * i) * bar.shift(ki + 1 - 2 * i) * prev.clone()
        };
        prev = cur;
        cur = next;
    }
    cur
}
