//! Verification suites. Each returns unsorted records.

use hirota_core::bethe::{
    bethe_residual_open, bethe_residual_periodic, max_relative, reconstruct_t1, solve_q_for_family,
    QFunction,
};
use hirota_core::chain::{ChainSpec, SpectralFamily, Spectrum, Topology, C64};
use hirota_core::detkit::{
    jacobi_residual, verify_hirota_like_via_plucker, BracketMatrix, PluckerCheck,
};
use hirota_core::hirota::{
    det_solution, hirota_like_residual, hirota_residual, lax_residual, tk_from_q_diag, tq_residual,
    LaxSide, LaxVariant, Residual,
};
use hirota_core::specfun::{
    extract_tk, generating_diag, generating_inhom, sample_points, sup_norm, Coeff, ExactFn, Field,
    FloatFn, SpectralFunction,
};
use hirota_core::Error;
use rand::Rng;
use rayon::prelude::*;

use crate::config::{Model, RunConfig};
use crate::instances::{gauss_matrix, open_phi, real_fn, real_poly, stream};
use crate::report::Record;

/// Random matrices per exact determinant identity.
pub const IDENTITY_INSTANCES: usize = 200;
/// Random `(T_1, φ)` pairs per exact relation check on continuants.
pub const FUNCTION_INSTANCES: usize = 2;

/// Shared state of one run: the chain, its spectrum and the `Q` of each family.
pub struct Context {
    pub config: RunConfig,
    pub spec: ChainSpec,
    pub points: Vec<C64>,
    pub spectrum: Spectrum,
    pub q: Vec<Result<QFunction, String>>,
}

impl Context {
    pub fn new(config: RunConfig, spectrum: Spectrum) -> Self {
        let spec = config.chain();
        let points = sample_points(config.seed, config.samples);
        let q = spectrum
            .families
            .par_iter()
            .map(|f| solve_q_for_family(f, spec.n, config.tol).map_err(|e| e.to_string()))
            .collect();
        Context {
            config,
            spec,
            points,
            spectrum,
            q,
        }
    }

    fn families(&self) -> &[SpectralFamily] {
        &self.spectrum.families
    }

    fn tol(&self) -> f64 {
        self.config.tol
    }

    fn kmax(&self) -> usize {
        self.config.kmax
    }

    fn open(&self) -> bool {
        self.spec.topology == Topology::Open
    }

    fn with_q(
        &self,
    ) -> impl ParallelIterator<Item = (&SpectralFamily, &Result<QFunction, String>)> {
        self.spectrum.families.par_iter().zip(self.q.par_iter())
    }
}

fn evaluate(
    r: hirota_core::Result<Residual<C64>>,
    rec: Record,
    points: &[C64],
    tol: f64,
) -> Record {
    match r {
        Ok(r) => rec.measured(r.relative(points), tol),
        Err(e) => rec.failed(e.to_string()),
    }
}

/// Hirota equations on each eigenstate; on open chains also the determinant
/// solution built from `T_1`.
pub fn hirota(ctx: &Context) -> Vec<Record> {
    let relation = if ctx.open() {
        "hirota-open"
    } else {
        "hirota-periodic"
    };
    ctx.families()
        .par_iter()
        .flat_map_iter(|f| {
            let mut out: Vec<Record> = (0..=ctx.kmax())
                .map(|k| {
                    let rec = Record::new("hirota", relation, &f.label).k(k);
                    evaluate(hirota_residual(f, k), rec, &ctx.points, ctx.tol())
                })
                .collect();
            if ctx.open() {
                out.extend((0..f.t.len()).map(|k| {
                    let det = det_solution(&f.t[1], &f.phi, k);
                    let r = Residual::new(vec![f.t[k].clone(), -det]);
                    Record::new("hirota", "det-solution", &f.label)
                        .k(k)
                        .measured(r.relative(&ctx.points), ctx.tol())
                }));
            }
            out
        })
        .collect()
}

/// `H_{k,a}` for `1 <= k <= kmax`, `0 <= a < k`, on open chains only.
pub fn hirota_like(ctx: &Context) -> Vec<Record> {
    if !ctx.open() {
        return Vec::new();
    }
    ctx.families()
        .par_iter()
        .flat_map_iter(|f| {
            (1..=ctx.kmax()).flat_map(move |k| {
                (0..k).map(move |a| {
                    let rec = Record::new("hirota-like", "hirota-like", &f.label)
                        .k(k)
                        .a(a);
                    evaluate(hirota_like_residual(f, k, a), rec, &ctx.points, ctx.tol())
                })
            })
        })
        .collect()
}

fn lax_variant(f: &SpectralFamily) -> LaxVariant {
    match f.topology {
        Topology::Periodic => LaxVariant::Periodic,
        Topology::Open if f.delta.is_zero() => LaxVariant::OpenHom,
        Topology::Open => LaxVariant::OpenInhom,
    }
}

/// Both auxiliary linear equations for `0 <= k <= kmax` with the solved `Q`.
pub fn lax(ctx: &Context) -> Vec<Record> {
    ctx.with_q()
        .flat_map_iter(|(f, q)| {
            let variant = lax_variant(f);
            let mut out = Vec::new();
            for side in [LaxSide::First, LaxSide::Second] {
                let relation = format!("lax-{}-{}", variant.name(), side.name());
                for k in 0..=ctx.kmax() {
                    let rec = Record::new("lax", relation.clone(), &f.label).k(k);
                    out.push(match q {
                        Ok(q) => evaluate(
                            lax_residual(f, &q.q, k, variant, side).map(|w| w.residual),
                            rec,
                            &ctx.points,
                            ctx.tol(),
                        ),
                        Err(e) => rec.failed(format!("no Q: {e}")),
                    });
                }
            }
            out
        })
        .collect()
}

/// `T_1 Q - φ̄ Q^{[2]} - φ Q^{[-2]} - Δ` with the solved `Q`.
pub fn tq(ctx: &Context) -> Vec<Record> {
    let shift = FloatFn::constant(C64::new(ctx.config.delta_shift, 0.0));
    ctx.with_q()
        .map(|(f, q)| {
            let rec = Record::new("tq", "tq", &f.label);
            match q {
                Ok(q) => {
                    let delta = f.delta.clone() + shift.clone();
                    rec.measured(
                        tq_residual(&f.t[1], &q.q, &f.phi, &delta).relative(&ctx.points),
                        ctx.tol(),
                    )
                }
                Err(e) => rec.failed(format!("no Q: {e}")),
            }
        })
        .collect()
}

fn plucker_record<C: Coeff>(
    label: String,
    check: hirota_core::Result<PluckerCheck<C>>,
    k: usize,
    a: usize,
) -> Record {
    let rec = Record::new("plucker", "plucker-construction", label)
        .k(k)
        .a(a);
    match check {
        Ok(c) => {
            let note = match &c.factor {
                Some(f) => format!("surviving terms {}, factor {f:?}", c.surviving),
                None => format!("surviving terms {}, no common factor", c.surviving),
            };
            rec.exact(c.residual.num().max_abs_coeff(), c.holds())
                .note(note)
        }
        Err(e) => rec.failed(e.to_string()),
    }
}

/// The Plücker relation of the bordered tridiagonal matrix against `H_{k,a}`.
/// The exact model uses seeded random rational data; the float model the
/// eigenstates of the chain, judged by relative residual and term count.
pub fn plucker(ctx: &Context) -> Vec<Record> {
    let pairs: Vec<(usize, usize)> = (1..=ctx.kmax())
        .flat_map(|k| (0..k).map(move |a| (k, a)))
        .collect();
    match ctx.config.model {
        Model::Exact => {
            let data: Vec<(String, ExactFn, ExactFn)> = (0..FUNCTION_INSTANCES)
                .map(|i| {
                    let mut r = stream(ctx.config.seed, 10 + i as u64);
                    let phi = open_phi(&mut r, 1);
                    (format!("instance-{i}"), real_fn(&mut r, 3), phi)
                })
                .collect();
            data.par_iter()
                .flat_map_iter(|(label, t1, phi)| {
                    pairs.iter().map(move |&(k, a)| {
                        plucker_record(
                            label.clone(),
                            verify_hirota_like_via_plucker(t1, phi, k, a),
                            k,
                            a,
                        )
                    })
                })
                .collect()
        }
        Model::Float => ctx
            .families()
            .par_iter()
            .flat_map_iter(|f| {
                pairs.iter().map(move |&(k, a)| {
                    let rec = Record::new("plucker", "plucker-construction", &f.label)
                        .k(k)
                        .a(a);
                    match verify_hirota_like_via_plucker(&f.t[1], &f.phi, k, a) {
                        Ok(c) => {
                            let r = Residual::new(c.terms.clone()).relative(&ctx.points);
                            let mut rec = rec
                                .measured(r, ctx.tol())
                                .note(format!("surviving terms {}", c.surviving));
                            rec.pass &= c.surviving == 3;
                            rec
                        }
                        Err(e) => rec.failed(e.to_string()),
                    }
                })
            })
            .collect(),
    }
}

fn exact_gap(x: &ExactFn, y: &ExactFn, points: &[C64]) -> (f64, bool) {
    if x == y {
        (0.0, true)
    } else {
        (
            sup_norm(&(x.clone() - y.clone()).to_c64(), points).max(f64::MIN_POSITIVE),
            false,
        )
    }
}

fn aggregate(relation: &str, results: Vec<hirota_core::Result<f64>>) -> Record {
    let rec =
        Record::new("identities", relation, "random").note(format!("{} instances", results.len()));
    let mut worst: f64 = 0.0;
    for r in results {
        match r {
            Ok(v) => worst = worst.max(v),
            Err(e) => return rec.failed(e.to_string()),
        }
    }
    rec.exact(worst, worst == 0.0)
}

/// Exact identities on seeded random data: Jacobi and Plücker relations on
/// Gaussian-rational matrices, generating functions against the closed forms
/// and the determinant solution, and the bilinear relations it satisfies.
pub fn identities(ctx: &Context) -> Vec<Record> {
    let seed = ctx.config.seed;
    let jacobi = (0..IDENTITY_INSTANCES)
        .into_par_iter()
        .map(|i| {
            let mut r = stream(seed, 1000 + i as u64);
            let n = r.gen_range(2..=6);
            let m = gauss_matrix(&mut r, n, n);
            let (p1, p2) = distinct(&mut r, n);
            let (q1, q2) = distinct(&mut r, n);
            jacobi_residual(&m, p1, p2, q1, q2).map(|v| v.abs())
        })
        .collect();
    let plucker = (0..IDENTITY_INSTANCES)
        .into_par_iter()
        .map(|i| {
            let mut r = stream(seed, 2000 + i as u64);
            let cols = r.gen_range(1..=3);
            let rows = r.gen_range(cols..=cols + 3);
            let x = BracketMatrix::new(gauss_matrix(&mut r, rows, cols))?;
            let mut pick = || {
                (0..cols)
                    .map(|_| r.gen_range(0..rows))
                    .collect::<Vec<usize>>()
            };
            let (a, b) = (pick(), pick());
            x.plucker_residual(&a, &b).map(|v| v.abs())
        })
        .collect();
    let mut out = vec![
        aggregate("jacobi", jacobi),
        aggregate("plucker-relation", plucker),
    ];

    let kmax = ctx.kmax();
    let per_instance: Vec<Vec<Record>> = (0..FUNCTION_INSTANCES)
        .into_par_iter()
        .map(|i| {
            let label = format!("instance-{i}");
            let mut r = stream(seed, 3000 + i as u64);
            let phi = open_phi(&mut r, 1);
            let q = SpectralFunction::from_poly(real_poly(&mut r, 2));
            let a = phi.clone() * q.shift(-2) / q.clone();
            let b = phi.bar() * q.shift(2) / q.clone();
            let c = real_fn(&mut r, 2) / q.clone();
            let order = 2 * kmax + 2;
            let mut recs = Vec::new();
            match (
                generating_diag(&a, &b, order),
                generating_inhom(&a, &b, &c, order),
            ) {
                (Ok(w1), Ok(w2)) => {
                    for k in 0..=kmax {
                        let checks = [
                            (
                                "w1-closed-form",
                                extract_tk(&w1, k).map(|t| (t, tk_from_q_diag(&a, &b, k))),
                            ),
                            (
                                "w1-det-solution",
                                extract_tk(&w1, k)
                                    .map(|t| (t, det_solution(&(a.clone() + b.clone()), &phi, k))),
                            ),
                            (
                                "w2-det-solution",
                                extract_tk(&w2, k).map(|t| {
                                    (
                                        t,
                                        det_solution(&(a.clone() + b.clone() + c.clone()), &phi, k),
                                    )
                                }),
                            ),
                        ];
                        for (relation, pair) in checks {
                            let rec = Record::new("identities", relation, &label).k(k);
                            recs.push(match pair {
                                Ok((x, y)) => {
                                    let (gap, same) = exact_gap(&x, &y, &ctx.points);
                                    rec.exact(gap, same)
                                }
                                Err(e) => rec.failed(e.to_string()),
                            });
                        }
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    recs.push(Record::new("identities", "generating", &label).failed(e.to_string()))
                }
            }

            let t1 = real_fn(&mut r, 3);
            let t = (0..=kmax + 1).map(|k| det_solution(&t1, &phi, k)).collect();
            let fam =
                SpectralFamily::from_data(label.clone(), Topology::Open, t, phi, ExactFn::zero());
            for k in 0..=kmax {
                let rec = Record::new("identities", "det-hirota-open", &label).k(k);
                recs.push(exact_record(hirota_residual(&fam, k), rec, &ctx.points));
                for a in 0..k {
                    let rec = Record::new("identities", "det-hirota-like", &label)
                        .k(k)
                        .a(a);
                    recs.push(exact_record(
                        hirota_like_residual(&fam, k, a),
                        rec,
                        &ctx.points,
                    ));
                }
            }
            recs
        })
        .collect();
    out.extend(per_instance.into_iter().flatten());
    out
}

fn exact_record(
    r: hirota_core::Result<Residual<hirota_core::specfun::GaussRat>>,
    rec: Record,
    points: &[C64],
) -> Record {
    match r {
        Ok(r) => {
            let (gap, same) = exact_gap(&r.value(), &ExactFn::zero(), points);
            rec.exact(gap, same)
        }
        Err(e) => rec.failed(e.to_string()),
    }
}

fn distinct(r: &mut impl Rng, n: usize) -> (usize, usize) {
    let a = r.gen_range(1..=n);
    let mut b = r.gen_range(1..n);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Per-eigenstate checks of the solved `Q`: the T-Q residual of the solve,
/// real analyticity, negation symmetry of the roots (open chains), the Bethe
/// equations and the reconstruction of `T_1`.
pub fn q_checks(ctx: &Context, f: &SpectralFamily, q: &Result<QFunction, String>) -> Vec<Record> {
    let tol = ctx.tol();
    let q = match q {
        Ok(q) => q,
        Err(e) => return vec![Record::new("solve-q", "q-solve", &f.label).failed(e.clone())],
    };
    let mut out = vec![
        Record::new("solve-q", "q-solve", &f.label)
            .measured(q.residual, tol)
            .note(format!("degree {}", q.degree())),
        Record::new("solve-q", "real-analytic", &f.label).measured(q.imag_defect, tol),
    ];
    if ctx.open() {
        out.push(
            Record::new("solve-q", "negation-closed", &f.label).measured(q.pairing_defect, tol),
        );
    }
    let bethe = Record::new("solve-q", "bethe", &f.label);
    let reduced = match f.topology {
        Topology::Periodic => bethe_residual_periodic(&q.roots, ctx.spec.n),
        Topology::Open => bethe_residual_open(&q.roots, &f.phi, &f.delta),
    };
    out.push(match reduced {
        Ok(r) => bethe.measured(max_relative(&r), tol),
        Err(Error::SingularRoot(_)) => match bethe_residual_open(&q.roots, &f.phi, &f.delta) {
            Ok(r) => bethe.measured(max_relative(&r), tol).note("unreduced form"),
            Err(e) => bethe.failed(e.to_string()),
        },
        Err(e) => bethe.failed(e.to_string()),
    });
    let round = Record::new("solve-q", "t1-roundtrip", &f.label);
    out.push(match reconstruct_t1(q, &f.phi, &f.delta, tol) {
        Ok(rec) => {
            let r = Residual::new(vec![f.t[1].clone(), -rec.t1]).relative(&ctx.points);
            round.measured(r.max(rec.remainder), tol)
        }
        Err(e) => round.failed(e.to_string()),
    });
    out
}
