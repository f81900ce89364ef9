//! Seeded random data in Gaussian-rational arithmetic.

use hirota_core::detkit::Matrix;
use hirota_core::hirota::phi_open_with;
use hirota_core::specfun::{Coeff, ExactFn, Field, GaussRat, Poly, SpectralFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type G = GaussRat;

/// Independent stream for each purpose under one seed.
pub fn stream(seed: u64, purpose: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(purpose);
    r
}

fn small_rat(r: &mut ChaCha8Rng) -> G {
    G::from_ratio(r.gen_range(-6..=6), r.gen_range(1..=4))
}

fn small_gauss(r: &mut ChaCha8Rng) -> G {
    G::from_parts(
        r.gen_range(-6..=6),
        r.gen_range(1..=4),
        r.gen_range(-6..=6),
        r.gen_range(1..=4),
    )
}

/// Real rational coefficients with a nonzero leading term.
pub fn real_poly(r: &mut ChaCha8Rng, degree: usize) -> Poly<G> {
    let mut c: Vec<G> = (0..degree).map(|_| small_rat(r)).collect();
    c.push(G::from_i64(r.gen_range(1..=3)));
    Poly::from_coeffs(c)
}

pub fn real_fn(r: &mut ChaCha8Rng, degree: usize) -> ExactFn {
    SpectralFunction::from_poly(real_poly(r, degree))
}

/// Open-chain `φ` with rational boundary data; the radicals are those of
/// Pythagorean triples so that `√(1+ξ²)` stays rational.
pub fn open_phi(r: &mut ChaCha8Rng, n: usize) -> ExactFn {
    let alpha = G::from_ratio(r.gen_range(1..=9), r.gen_range(2..=5));
    let beta = G::from_ratio(r.gen_range(-9..=9) | 1, r.gen_range(2..=5));
    let radicals = [
        G::from_ratio(5, 4),
        G::from_ratio(13, 12),
        G::from_ratio(5, 3),
        G::one(),
    ];
    let radical = radicals[r.gen_range(0..radicals.len())].clone();
    phi_open_with(n, alpha, beta, radical)
}

pub fn gauss_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<G> {
    let data = (0..rows * cols).map(|_| small_gauss(r)).collect();
    Matrix::new(rows, cols, data).expect("dimensions match")
}
