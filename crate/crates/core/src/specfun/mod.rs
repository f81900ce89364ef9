//! Polynomials, rational functions and shift-operator series in the
//! spectral parameter `u`.

mod coeff;
mod poly;
mod ratfn;
mod series;

pub use coeff::{Coeff, Field, GaussRat};
pub use poly::Poly;
pub use ratfn::SpectralFunction;
pub use series::{extract_tk, generating_diag, generating_inhom, series_from_inverse, ShiftSeries};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact and float aliases used throughout the crate.
pub type ExactFn = SpectralFunction<GaussRat>;
pub type FloatFn = SpectralFunction<Complex64>;

/// Deterministic sample points with `0.5 <= |u| <= 3`, kept at least 0.1 away
/// from every point of the half-integer imaginary lattice `i m / 2`, where
/// the spectral data of the chains has its poles and trivial zeros.
pub fn sample_points(seed: u64, count: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r: f64 = rng.gen_range(0.5..3.0);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let u = Complex64::from_polar(r, theta);
        let nearest = (2.0 * u.im).round() / 2.0;
        if Complex64::new(u.re, u.im - nearest).norm() >= 0.1 {
            out.push(u);
        }
    }
    out
}

/// `max_s |f(u_s)|` over the sample points.
pub fn sup_norm<C: Coeff>(f: &SpectralFunction<C>, points: &[Complex64]) -> f64 {
    points
        .iter()
        .map(|&u| f.eval_c64(u).norm())
        .fold(0.0, f64::max)
}
