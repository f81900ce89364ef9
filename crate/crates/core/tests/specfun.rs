mod common;

use common::*;
use hirota_core::hirota::{phi_periodic, tk_from_q_diag};
use hirota_core::specfun::{
    extract_tk, generating_diag, sample_points, series_from_inverse, Coeff, ExactFn, Field,
    FloatFn, Poly, ShiftSeries, SpectralFunction,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn random_ratfn(seed: u64) -> ExactFn {
    let mut r = rng(seed);
    let num = Poly::from_coeffs(
        (0..3)
            .map(|_| small_gauss(&mut r))
            .chain([G::one()])
            .collect(),
    );
    let den = Poly::from_coeffs(vec![small_gauss(&mut r), G::one()]);
    SpectralFunction::new(num, den)
}

#[test]
fn shift_examples() {
    let u = ExactFn::u();
    assert_eq!(u.shift(2), ExactFn::from_poly(Poly::linear(G::imag_unit())));
    let sq = ExactFn::from_poly(Poly::linear(G::half_i(1)).pow(2));
    assert_eq!(sq.shift(-1), ExactFn::from_poly(Poly::u().pow(2)));
    let (phi, bar) = phi_periodic::<G>(1);
    assert_eq!(phi.shift(0), Poly::linear(G::half_i(1)));
    assert_eq!(phi.bar(), bar);
    let (phi2, bar2) = phi_periodic::<G>(2);
    assert_eq!(phi2.bar(), bar2);
    assert_eq!(bar2, Poly::linear(G::half_i(-1)).pow(2));
}

#[test]
fn bar_examples() {
    let f = ExactFn::from_poly(Poly::linear(G::half_i(1)));
    assert_eq!(f.bar(), ExactFn::from_poly(Poly::linear(G::half_i(-1))));
    let mut r = rng(11);
    let real = real_fn(&mut r, 5);
    assert_eq!(real.bar(), real);
}

#[test]
fn geometric_inverse_of_single_term() {
    // (1 - cD)^{-1} = 1 + cD + c c^{[-1]} D^2 + …
    let c = random_ratfn(3);
    let order = 6;
    let s = series_from_inverse(&ShiftSeries::term(c.clone(), 1, order), order).unwrap();
    assert_eq!(s.coeff(0), ExactFn::one());
    assert_eq!(s.coeff(1), c);
    assert_eq!(s.coeff(2), c.clone() * c.shift(-1));
    let back = ShiftSeries::one(order)
        .sub(&ShiftSeries::term(c, 1, order))
        .mul(&s);
    assert_eq!(back, ShiftSeries::one(order));
}

#[test]
fn w1_reproduces_closed_form_up_to_level_five() {
    let mut r = rng(17);
    let a = real_fn(&mut r, 2) / real_fn(&mut r, 1);
    let b = real_fn(&mut r, 2);
    let w = generating_diag(&a, &b, 10).unwrap();
    assert_eq!(extract_tk(&w, 0).unwrap(), ExactFn::one());
    for k in 1..=5 {
        assert_eq!(
            extract_tk(&w, k).unwrap(),
            tk_from_q_diag(&a, &b, k),
            "level {k}"
        );
    }
}

#[test]
fn float_model_reduces_only_powers_of_u() {
    let num = Poly::from_coeffs(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 0.0),
    ]);
    let den = Poly::from_coeffs(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)]);
    let f = FloatFn::new(num, den);
    assert_eq!(f.den().degree(), Some(0));
    assert_eq!(f.num().degree(), Some(1));
}

#[test]
fn spectral_function_json_layout() {
    let f = ExactFn::new(Poly::linear(G::half_i(1)), Poly::u()).to_c64();
    let v: serde_json::Value = serde_json::to_value(&f).unwrap();
    assert_eq!(v["num"], serde_json::json!([[0.0, 0.5], [1.0, 0.0]]));
    assert_eq!(v["den"], serde_json::json!([[0.0, 0.0], [1.0, 0.0]]));
}

#[test]
fn sample_points_avoid_the_lattice() {
    for u in sample_points(3, 200) {
        let nearest = (2.0 * u.im).round() / 2.0;
        assert!(Complex64::new(u.re, u.im - nearest).norm() >= 0.1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn shift_is_a_group_action(seed in 0u64..10_000, a in -6i64..=6, b in -6i64..=6) {
        let f = random_ratfn(seed);
        prop_assert_eq!(f.shift(a + b), f.shift(a).shift(b));
    }

    #[test]
    fn bar_reverses_shifts(seed in 0u64..10_000, k in -6i64..=6) {
        let f = random_ratfn(seed);
        prop_assert_eq!(f.shift(k).bar(), f.bar().shift(-k));
    }

    #[test]
    fn series_product_is_associative(seed in 0u64..10_000, order in 2usize..=8) {
        let mut r = rng(seed);
        let mut series = || {
            let mut s = ShiftSeries::zero(order);
            for p in 0..=order.min(3) {
                s = s.add(&ShiftSeries::term(real_fn(&mut r, 1), p, order));
            }
            s
        };
        let (x, y, z) = (series(), series(), series());
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }
}
