//! Simultaneous diagonalization of the fused transfer matrices and recovery
//! of every eigenvalue as a rational function of `u`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::fusion::Normalization;
use super::operator::C64;
use super::transfer::{hamiltonian_pauli, transfer, AuxRepr, ChainSpec, Topology};
use crate::error::{Error, Result};
use crate::hirota::{delta_open, phi_open, phi_periodic, quantum_determinant};
use crate::specfun::{sample_points, Coeff, Field, FloatFn, GaussRat, Poly, SpectralFunction};

pub const MAX_SITES: usize = 8;
pub const MAX_KMAX: usize = 5;
const MAX_ATTEMPTS: usize = 5;
const CLUSTER_TIGHT: f64 = 1e-7;
const CLUSTER_LOOSE: f64 = 1e-4;
const BLOCK_TOL: f64 = 1e-7;
const RADII: [f64; 6] = [0.75, 1.25, 1.75, 2.25, 3.25, 4.25];
const HELD_OUT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumOptions {
    pub seed: u64,
    /// Relative tolerance for reproducing held-out matrix eigenvalues.
    pub interpolation_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            seed: 42,
            interpolation_tol: 1e-9,
        }
    }
}

/// Eigenvalue functions of one joint eigenspace of the commuting family,
/// or any other data on which the functional relations can be evaluated.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct SpectralFamily<C: Coeff = C64> {
    pub label: String,
    pub multiplicity: usize,
    pub energy: f64,
    pub topology: Topology,
    /// `T_0, …, T_{kmax+1}`.
    pub t: Vec<SpectralFunction<C>>,
    pub phi: SpectralFunction<C>,
    pub phi_bar: SpectralFunction<C>,
    pub delta: SpectralFunction<C>,
    /// `T_{2,0}, …, T_{2,kmax+1}`.
    pub t2: Vec<SpectralFunction<C>>,
}

impl<C: Coeff> SpectralFamily<C> {
    /// Family with `φ̄ = bar φ` and quantum determinants built from `φ`.
    pub fn from_data(
        label: impl Into<String>,
        topology: Topology,
        t: Vec<SpectralFunction<C>>,
        phi: SpectralFunction<C>,
        delta: SpectralFunction<C>,
    ) -> Self {
        let t2 = (0..t.len()).map(|k| quantum_determinant(&phi, k)).collect();
        SpectralFamily {
            label: label.into(),
            multiplicity: 1,
            energy: 0.0,
            topology,
            t,
            phi_bar: phi.bar(),
            phi,
            delta,
            t2,
        }
    }

    /// `T_k`, with `T_{-1} = 0`.
    pub fn tk(&self, k: i64) -> Result<SpectralFunction<C>> {
        if k == -1 {
            return Ok(SpectralFunction::zero());
        }
        usize::try_from(k)
            .ok()
            .and_then(|k| self.t.get(k).cloned())
            .ok_or(Error::MissingEntry(k))
    }

    pub fn t2k(&self, k: i64) -> Result<SpectralFunction<C>> {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.t2.get(k).cloned())
            .ok_or(Error::MissingEntry(k))
    }

    /// Largest `k` with `T_{k+1}` available.
    pub fn kmax(&self) -> usize {
        self.t.len().saturating_sub(2)
    }

    /// Right-hand side of the bilinear relation at level `k`:
    /// `φ^{[k]} φ̄^{[-k]}` (periodic) or `T_{2,k}` (open).
    pub fn hirota_rhs(&self, k: usize) -> Result<SpectralFunction<C>> {
        match self.topology {
            Topology::Periodic => Ok(self.phi.shift(k as i64) * self.phi_bar.shift(-(k as i64))),
            Topology::Open => self.t2k(k as i64),
        }
    }
}

/// How `T_k` relates to the normalized transfer matrix at level `k`:
/// `T_k(u) = ρ_k(u) t^{(k/2)}(u - i/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationRecord {
    pub k: usize,
    /// Degree in `u` of the unnormalized eigenvalue polynomials.
    pub raw_degree: usize,
    pub rho: FloatFn,
    /// Trivial zeros removed from the unnormalized eigenvalues.
    pub cancelled_factors: usize,
    /// Largest held-out interpolation error, relative to the sampled scale.
    pub interpolation_residual: f64,
    /// Largest relative deviation, over eigenstates and sample points, of the
    /// bilinear relation at level `k - 1` that fixes this normalization.
    pub anchor_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub spec: ChainSpec,
    pub kmax: usize,
    pub families: Vec<SpectralFamily<C64>>,
    pub normalization: Vec<NormalizationRecord>,
    pub attempts: usize,
}

/// Degree of the unnormalized eigenvalue polynomial at level `k`.
pub fn raw_degree(spec: &ChainSpec, k: usize) -> usize {
    match spec.topology {
        Topology::Periodic => k * spec.n,
        Topology::Open => 2 * k * spec.n + k * (k + 1),
    }
}

/// Roots and leading constant of `Z_k`, the divisor taking the shifted
/// unnormalized open-chain eigenvalue at level `k` to `T_k`.
fn open_divisor(k: usize) -> (Vec<GaussRat>, GaussRat) {
    let mut roots = Vec::new();
    let mut lead = GaussRat::one();
    // Arguments 2v + s i of the R-factors inside both fused K-matrices.
    for kp in 1..=k as i64 {
        for l in 1..kp {
            let s = kp + l - k as i64 - 1;
            roots.push(GaussRat::half_i(1 - s));
            roots.push(GaussRat::half_i(s - 1));
            lead = lead * GaussRat::from_i64(-4);
        }
    }
    (roots, lead)
}

/// Zeros shared by every unnormalized eigenvalue at level `k`, as a
/// polynomial in `u`: the `χ` denominators at `v = u - i/2` (and `w = -u - i/2`
/// for the open chain).
pub fn trivial_zeros(spec: &ChainSpec, k: usize) -> Poly<GaussRat> {
    type G = GaussRat;
    let kk = k as i64;
    match spec.topology {
        Topology::Periodic => (0..kk - 1)
            .fold(Poly::<G>::one(), |acc, m| {
                &acc * &Poly::linear(G::half_i(kk - 2 - 2 * m))
            })
            .pow(spec.n as u32),
        Topology::Open => {
            let v = Poly::<G>::linear(G::half_i(-1));
            let w = -Poly::<G>::linear(G::half_i(1));
            // χ1 denominator Π_{m=0}^{k-2} (v + i(k-1-2m)/2), raised to 2N.
            let chi1 = (0..kk - 1).fold(Poly::<G>::one(), |acc, m| {
                &acc * &(v.clone() + Poly::constant(G::half_i(kk - 1 - 2 * m)))
            });
            // χ2 denominator Π_{m=1}^{2k-3} (x + i(k-m)/2) at x = v and x = w.
            let chi2 = |x: &Poly<G>| {
                (1..=(2 * kk - 3)).fold(Poly::<G>::one(), |acc, m| {
                    &acc * &(x.clone() + Poly::constant(G::half_i(kk - m)))
                })
            };
            &(&chi1.pow(2 * spec.n as u32) * &chi2(&v)) * &chi2(&w)
        }
    }
}

/// Exact `ρ_k` relative to the `χ`-normalized transfer matrix, reduced.
pub fn normalization_factor(spec: &ChainSpec, k: usize) -> SpectralFunction<GaussRat> {
    if spec.topology == Topology::Periodic || k == 0 {
        return SpectralFunction::one();
    }
    let (roots, lead) = open_divisor(k);
    SpectralFunction::new(
        trivial_zeros(spec, k),
        Poly::from_roots(&roots).scale(&lead),
    )
}

struct Eigenbasis {
    clusters: Vec<Vec<usize>>,
    v: DMatrix<C64>,
    w: DMatrix<C64>,
}

fn random_point(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
}

fn cluster(eigs: &[C64], scale: f64) -> Option<Vec<Vec<usize>>> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            let d = (eigs[a] - eigs[b]).norm();
            if d <= CLUSTER_TIGHT * scale {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            } else if d < CLUSTER_LOOSE * scale {
                return None;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    Some(groups.into_values().collect())
}

fn eigenbasis(g: &DMatrix<C64>) -> Option<Eigenbasis> {
    let dim = g.nrows();
    let eigs: Vec<C64> = g.clone().schur().eigenvalues()?.iter().copied().collect();
    let scale = eigs
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(g.norm() / (dim as f64).sqrt());
    let groups = cluster(&eigs, scale)?;
    let mut cols: Vec<DVector<C64>> = Vec::with_capacity(dim);
    let mut clusters = Vec::with_capacity(groups.len());
    for grp in groups {
        let m = grp.len();
        let mean = grp.iter().map(|&i| eigs[i]).sum::<C64>() / m as f64;
        let shifted = g - DMatrix::<C64>::identity(dim, dim) * mean;
        let svd = shifted.svd(false, true);
        let sv = &svd.singular_values;
        let vt = svd.v_t?;
        if sv[dim - m] > 1e-6 * scale || (m < dim && sv[dim - m - 1] <= 1e-6 * scale) {
            return None;
        }
        let start = cols.len();
        for r in dim - m..dim {
            cols.push(vt.row(r).adjoint());
        }
        clusters.push((start..start + m).collect());
    }
    let v = DMatrix::from_columns(&cols);
    let w = v.clone().try_inverse()?;
    if (&w * &v - DMatrix::<C64>::identity(dim, dim)).norm() > 1e-8 * dim as f64 {
        return None;
    }
    Some(Eigenbasis { clusters, v, w })
}

/// Block means of `W A V` over the clusters, with the off-block relative defect.
fn block_eigenvalues(basis: &Eigenbasis, a: &DMatrix<C64>) -> (Vec<C64>, f64) {
    let b = &basis.w * a * &basis.v;
    let mut fitted = DMatrix::<C64>::zeros(b.nrows(), b.ncols());
    let vals: Vec<C64> = basis
        .clusters
        .iter()
        .map(|c| {
            let lam = c.iter().map(|&i| b[(i, i)]).sum::<C64>() / c.len() as f64;
            for &i in c {
                fitted[(i, i)] = lam;
            }
            lam
        })
        .collect();
    let scale = b.norm().max(f64::MIN_POSITIVE);
    (vals, (&b - fitted).norm() / scale)
}

/// Coefficients of the degree-`deg` polynomial through values on concentric
/// circles of `m` points each. Coefficient `j` comes from the circle with the
/// smallest Cauchy bound `max|p| / r^j`.
fn multi_radius_interpolate(points: &[C64], values: &[C64], m: usize, deg: usize) -> Poly<C64> {
    let fits: Vec<(f64, f64, Poly<C64>)> = points
        .chunks(m)
        .zip(values.chunks(m))
        .map(|(z, f)| {
            let top = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
            (z[0].norm(), top, dft_interpolate(z, f, deg))
        })
        .collect();
    let coeffs = (0..=deg)
        .map(|j| {
            let bound = |(r, top, _): &(f64, f64, Poly<C64>)| top / r.powi(j as i32);
            let best = fits
                .iter()
                .min_by(|a, b| bound(a).total_cmp(&bound(b)))
                .expect("at least one circle");
            best.2.coeff(j)
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Coefficients of the degree-`deg` polynomial through values on a circle.
fn dft_interpolate(points: &[C64], values: &[C64], deg: usize) -> Poly<C64> {
    let m = points.len() as f64;
    let coeffs = (0..=deg)
        .map(|n| {
            points
                .iter()
                .zip(values)
                .map(|(z, f)| f * z.powi(-(n as i32)))
                .sum::<C64>()
                / m
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Per-state quantized key for a canonical ordering.
fn sort_key(f: &SpectralFamily<C64>) -> Vec<i64> {
    let probe = C64::new(0.3, 0.2);
    let q = |x: f64| (x * 1e6).round() as i64;
    let mut key = vec![q(f.energy)];
    for t in f.t.iter().skip(1).take(2) {
        let z = t.eval_c64(probe);
        key.push(q(z.re));
        key.push(q(z.im));
    }
    key
}

/// Relative deviation of `T_k^+ T_k^- - T_{k+1} T_{k-1} = rhs_k` over the sample points.
fn bilinear_deviation(f: &SpectralFamily<C64>, k: usize, points: &[C64]) -> Result<f64> {
    let tk = f.tk(k as i64)?;
    let (tp, tm) = (tk.shift(1), tk.shift(-1));
    let (up, down) = (f.tk(k as i64 + 1)?, f.tk(k as i64 - 1)?);
    let rhs = f.hirota_rhs(k)?;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &u in points {
        let a = tp.eval_c64(u) * tm.eval_c64(u);
        let b = up.eval_c64(u) * down.eval_c64(u);
        let c = rhs.eval_c64(u);
        worst = worst.max((a - b - c).norm());
        scale = scale.max(a.norm()).max(b.norm()).max(c.norm());
    }
    Ok(if scale == 0.0 { worst } else { worst / scale })
}

/// Joint eigenvalue functions `T_0..=T_{kmax+1}` of every eigenspace, with default options.
pub fn spectrum_family(spec: &ChainSpec, kmax: usize) -> Result<Vec<SpectralFamily<C64>>> {
    Ok(spectrum(spec, kmax, &SpectrumOptions::default())?.families)
}

/// Joint eigenvalue functions with their normalization records.
pub fn spectrum(spec: &ChainSpec, kmax: usize, opts: &SpectrumOptions) -> Result<Spectrum> {
    spec.validate()?;
    if spec.n > MAX_SITES {
        return Err(Error::Guard(format!(
            "sites = {} exceeds {MAX_SITES}",
            spec.n
        )));
    }
    if kmax > MAX_KMAX {
        return Err(Error::Guard(format!("kmax = {kmax} exceeds {MAX_KMAX}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fundamental = |u: C64| {
        transfer(spec, 1, u, Normalization::Raw, AuxRepr::Symmetric).map(|t| t.into_data())
    };

    let mut basis = None;
    let mut attempts = 0;
    while attempts < MAX_ATTEMPTS {
        attempts += 1;
        let (u0, u1) = (random_point(&mut rng), random_point(&mut rng));
        let c = C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let g = fundamental(u0)? + fundamental(u1)? * c;
        if let Some(b) = eigenbasis(&g) {
            basis = Some(b);
            break;
        }
    }
    let basis = basis.ok_or(Error::Degenerate(attempts))?;
    let states = basis.clusters.len();

    let top = kmax + 1;
    let mut levels: Vec<Vec<FloatFn>> = vec![Vec::with_capacity(top + 1); states];
    let t0 = match spec.topology {
        Topology::Periodic => FloatFn::from_poly(Poly::monomial(C64::new(1.0, 0.0), spec.n)),
        Topology::Open => FloatFn::one(),
    };
    for lv in levels.iter_mut() {
        lv.push(t0.clone());
    }
    let mut records = Vec::with_capacity(top + 1);
    records.push(NormalizationRecord {
        k: 0,
        raw_degree: 0,
        rho: FloatFn::one(),
        cancelled_factors: 0,
        interpolation_residual: 0.0,
        anchor_deviation: 0.0,
    });

    for k in 1..=top {
        let deg = raw_degree(spec, k);
        let m = deg + 1;
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let circles: Vec<C64> = RADII
            .iter()
            .flat_map(|&r| {
                (0..m).map(move |s| {
                    C64::from_polar(r, phase + std::f64::consts::TAU * s as f64 / m as f64)
                })
            })
            .collect();
        let held: Vec<C64> = (0..HELD_OUT)
            .map(|_| {
                C64::from_polar(
                    rng.gen_range(0.5..RADII[RADII.len() - 2]),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let all: Vec<C64> = circles.iter().chain(held.iter()).copied().collect();
        let evaluated: Vec<(Vec<C64>, f64)> = all
            .par_iter()
            .map(|&u| {
                transfer(
                    spec,
                    k,
                    u - C64::new(0.0, 0.5),
                    Normalization::Raw,
                    AuxRepr::Symmetric,
                )
                .map(|t| block_eigenvalues(&basis, t.data()))
            })
            .collect::<Result<_>>()?;
        let defect = evaluated.iter().map(|(_, d)| *d).fold(0.0, f64::max);
        if defect > BLOCK_TOL {
            return Err(Error::Interpolation {
                what: format!("level {k} is not block diagonal in the common eigenbasis"),
                residual: defect,
                tol: BLOCK_TOL,
            });
        }
        let zeros = trivial_zeros(spec, k).map(|c| c.to_c64());
        let rho = normalization_factor(spec, k);
        let rho_f = rho.to_c64();
        let cancelled = zeros.degree().unwrap_or(0) - rho.num().degree().unwrap_or(0);
        let pdeg = deg - zeros.degree().unwrap_or(0);
        let on_circles = RADII.len() * m;
        let divided = |st: usize, range: std::ops::Range<usize>| -> Vec<C64> {
            range
                .map(|s| evaluated[s].0[st] / zeros.eval_c64(all[s]))
                .collect()
        };
        let mut worst: f64 = 0.0;
        for (st, lv) in levels.iter_mut().enumerate() {
            let p = multi_radius_interpolate(&circles, &divided(st, 0..on_circles), m, pdeg);
            let held_values = divided(st, on_circles..all.len());
            let scale = held_values
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max)
                .max(f64::MIN_POSITIVE);
            for (h, e) in held.iter().zip(&held_values) {
                worst = worst.max((p.eval_c64(*h) - e).norm() / scale);
            }
            lv.push(FloatFn::from_poly(p) * rho_f.clone());
        }
        if worst > opts.interpolation_tol {
            return Err(Error::Interpolation {
                what: format!("held-out eigenvalues at level {k}"),
                residual: worst,
                tol: opts.interpolation_tol,
            });
        }
        records.push(NormalizationRecord {
            k,
            raw_degree: deg,
            rho: rho_f,
            cancelled_factors: cancelled,
            interpolation_residual: worst,
            anchor_deviation: 0.0,
        });
    }

    let h = hamiltonian_pauli(spec)?;
    let (energies, _) = block_eigenvalues(&basis, h.data());
    let (phi, phi_bar, delta) = match spec.topology {
        Topology::Periodic => {
            let (p, b) = phi_periodic::<C64>(spec.n);
            (
                FloatFn::from_poly(p),
                FloatFn::from_poly(b),
                FloatFn::zero(),
            )
        }
        Topology::Open => {
            let p = phi_open(spec.n, spec.alpha, spec.beta, spec.xi);
            let b = p.bar();
            (p, b, FloatFn::from_poly(delta_open(spec.n, spec.xi)))
        }
    };
    let t2: Vec<FloatFn> = (0..=top).map(|k| quantum_determinant(&phi, k)).collect();
    let mut families: Vec<SpectralFamily<C64>> = levels
        .into_iter()
        .enumerate()
        .map(|(st, t)| SpectralFamily {
            label: String::new(),
            multiplicity: basis.clusters[st].len(),
            energy: energies[st].re,
            topology: spec.topology,
            t,
            phi: phi.clone(),
            phi_bar: phi_bar.clone(),
            delta: delta.clone(),
            t2: t2.clone(),
        })
        .collect();
    families.sort_by_cached_key(sort_key);
    for (i, f) in families.iter_mut().enumerate() {
        f.label = format!("s{i:02}");
    }

    let probes = sample_points(opts.seed ^ 0x5eed, 20);
    for k in 0..top {
        let mut dev: f64 = 0.0;
        for f in &families {
            dev = dev.max(bilinear_deviation(f, k, &probes)?);
        }
        records[k + 1].anchor_deviation = dev;
    }

    Ok(Spectrum {
        spec: *spec,
        kmax,
        families,
        normalization: records,
        attempts,
    })
}
