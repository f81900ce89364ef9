#![allow(dead_code)]

use hirota_core::specfun::{Coeff, ExactFn, Field, GaussRat, Poly, SpectralFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type G = GaussRat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> G {
    G::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn small_gauss(rng: &mut ChaCha8Rng) -> G {
    G::from_parts(
        rng.gen_range(-6..=6),
        rng.gen_range(1..=4),
        rng.gen_range(-6..=6),
        rng.gen_range(1..=4),
    )
}

/// Random polynomial with real rational coefficients and nonzero leading term.
pub fn real_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly<G> {
    let mut c: Vec<G> = (0..degree).map(|_| small_rat(rng)).collect();
    c.push(G::from_i64(rng.gen_range(1..=3)));
    Poly::from_coeffs(c)
}

pub fn real_fn(rng: &mut ChaCha8Rng, degree: usize) -> ExactFn {
    SpectralFunction::from_poly(real_poly(rng, degree))
}

/// Random open-chain `φ` built from the closed form with rational boundary data.
pub fn open_phi(rng: &mut ChaCha8Rng, n: usize) -> ExactFn {
    let alpha = G::from_ratio(rng.gen_range(1..=9), rng.gen_range(2..=5));
    let beta = G::from_ratio(rng.gen_range(-9..=9) | 1, rng.gen_range(2..=5));
    // Pythagorean radicals keep √(1+ξ²) rational.
    let radical = [
        G::from_ratio(5, 4),
        G::from_ratio(13, 12),
        G::from_ratio(5, 3),
        G::one(),
    ][rng.gen_range(0..4)]
    .clone();
    hirota_core::hirota::phi_open_with(n, alpha, beta, radical)
}

pub fn real_analytic_delta(rng: &mut ChaCha8Rng, degree: usize) -> ExactFn {
    real_fn(rng, degree)
}
