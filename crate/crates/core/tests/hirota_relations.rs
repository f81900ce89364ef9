mod common;

use common::*;
use hirota_core::chain::{SpectralFamily, Topology};
use hirota_core::hirota::*;
use hirota_core::specfun::{
    extract_tk, generating_diag, generating_inhom, Coeff, ExactFn, Field, Poly, SpectralFunction,
};

/// Open family of arbitrary (non-solution) real-analytic data with `T_0 = 1`.
fn random_open_family(seed: u64, kmax: usize, with_delta: bool) -> (SpectralFamily<G>, Poly<G>) {
    let mut r = rng(seed);
    let phi = open_phi(&mut r, 1);
    let mut t = vec![ExactFn::one()];
    for k in 1..=kmax + 1 {
        t.push(real_fn(&mut r, k + 1));
    }
    let delta = if with_delta {
        real_analytic_delta(&mut r, 2)
    } else {
        ExactFn::zero()
    };
    let q = real_poly(&mut r, 2);
    (
        SpectralFamily::from_data("random", Topology::Open, t, phi, delta),
        q,
    )
}

fn det_family(seed: u64, kmax: usize) -> SpectralFamily<G> {
    let mut r = rng(seed);
    let phi = open_phi(&mut r, 1);
    let t1 = real_fn(&mut r, 3);
    let t = (0..=kmax + 1).map(|k| det_solution(&t1, &phi, k)).collect();
    SpectralFamily::from_data("det", Topology::Open, t, phi, ExactFn::zero())
}

#[test]
fn open_hirota_at_level_zero_is_trivial() {
    let (f, _) = random_open_family(1, 1, true);
    assert!(hirota_residual(&f, 0).unwrap().is_zero());
}

#[test]
fn missing_entries_are_reported() {
    let (f, q) = random_open_family(2, 1, true);
    assert!(hirota_residual(&f, 5).is_err());
    assert!(hirota_like_residual(&f, 1, 1).is_err());
    assert!(lax_residual(&f, &q, 4, LaxVariant::OpenHom, LaxSide::First).is_err());
}

#[test]
fn complex_q_is_rejected() {
    let (f, _) = random_open_family(3, 1, true);
    let q = Poly::linear(G::half_i(1));
    assert!(lax_residual(&f, &q, 0, LaxVariant::OpenHom, LaxSide::First).is_err());
}

#[test]
fn det_solution_small_cases() {
    let mut r = rng(4);
    let phi = open_phi(&mut r, 2);
    let t1 = real_fn(&mut r, 4);
    assert_eq!(det_solution(&t1, &phi, 0), ExactFn::one());
    assert_eq!(det_solution(&t1, &phi, 1), t1);
    let two = t1.shift(1) * t1.shift(-1) - phi.shift(1) * phi.bar().shift(-1);
    assert_eq!(det_solution(&t1, &phi, 2), two);
}

#[test]
fn det_solution_solves_hirota_and_hirota_like_exactly() {
    for seed in 0..3 {
        let f = det_family(100 + seed, 4);
        for k in 0..=4 {
            assert!(hirota_residual(&f, k).unwrap().is_zero(), "hirota k={k}");
            for a in 0..k {
                assert!(
                    hirota_like_residual(&f, k, a).unwrap().is_zero(),
                    "H k={k} a={a}"
                );
            }
        }
    }
}

#[test]
fn hirota_like_at_a_zero_is_hirota() {
    let (f, _) = random_open_family(5, 3, true);
    for k in 1..=3 {
        let h = hirota_like_residual(&f, k, 0).unwrap().value();
        assert_eq!(h, -hirota_residual(&f, k).unwrap().value());
    }
}

#[test]
fn inhomogeneous_lax_at_level_zero_is_tq() {
    let (f, q) = random_open_family(6, 1, true);
    let lax = lax_residual(&f, &q, 0, LaxVariant::OpenInhom, LaxSide::First).unwrap();
    let tq = tq_residual(&f.t[1], &q, &f.phi, &f.delta);
    assert_eq!(lax.residual.value(), tq.value());
}

#[test]
fn inhomogeneous_lax_without_delta_is_homogeneous() {
    let (f, q) = random_open_family(7, 3, false);
    for k in 0..=3 {
        for side in [LaxSide::First, LaxSide::Second] {
            let a = lax_residual(&f, &q, k, LaxVariant::OpenInhom, side)
                .unwrap()
                .residual
                .value();
            let b = lax_residual(&f, &q, k, LaxVariant::OpenHom, side)
                .unwrap()
                .residual
                .value();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn second_lax_equation_follows_from_the_first() {
    for (variant, with_delta) in [(LaxVariant::OpenHom, false), (LaxVariant::OpenInhom, true)] {
        let (f, q) = random_open_family(8, 3, with_delta);
        for k in 1..=3 {
            let first = lax_residual(&f, &q, k - 1, variant, LaxSide::First)
                .unwrap()
                .residual
                .value();
            let second = lax_residual(&f, &q, k, variant, LaxSide::Second)
                .unwrap()
                .residual
                .value();
            assert_eq!(first.shift(1), -second.bar(), "{variant:?} k={k}");
        }
    }
    let mut r = rng(9);
    let (phi, _) = phi_periodic::<G>(2);
    let phi = SpectralFunction::from_poly(phi);
    let mut t = vec![phi.shift(-1)];
    for k in 1..=4 {
        t.push(real_fn(&mut r, 2 * k));
    }
    let f = SpectralFamily::from_data("periodic", Topology::Periodic, t, phi, ExactFn::zero());
    let q = real_poly(&mut r, 1);
    for k in 1..=3 {
        let first = lax_residual(&f, &q, k - 1, LaxVariant::Periodic, LaxSide::First)
            .unwrap()
            .residual
            .value();
        let second = lax_residual(&f, &q, k, LaxVariant::Periodic, LaxSide::Second)
            .unwrap()
            .residual
            .value();
        assert_eq!(first.shift(1), -second.bar(), "periodic k={k}");
    }
}

#[test]
fn compatibility_identity_holds_on_arbitrary_data() {
    for seed in 0..3 {
        let (f, q) = random_open_family(200 + seed, 4, true);
        for k in 1..=3 {
            let lhs = compatibility_residual(&f, &q, k).unwrap().value();
            let rhs = compatibility_decomposition(&f, &q, k).unwrap();
            assert_eq!(lhs, rhs, "seed={seed} k={k}");
        }
    }
}

#[test]
fn compatibility_without_delta_is_scaled_hirota() {
    let (f, q) = random_open_family(10, 3, false);
    for k in 1..=3 {
        let ki = k as i64;
        let c = compatibility_residual(&f, &q, k).unwrap().value();
        let h = hirota_residual(&f, k).unwrap().value()
            * f.phi.shift(-ki)
            * SpectralFunction::from_poly(q.shift(-ki - 2));
        assert_eq!(c, h);
    }
}

#[test]
fn generating_functions_match_closed_forms() {
    let mut r = rng(11);
    let phi = open_phi(&mut r, 1);
    let q = SpectralFunction::from_poly(real_poly(&mut r, 2));
    let a = phi.clone() * q.shift(-2) / q.clone();
    let b = phi.bar() * q.shift(2) / q.clone();
    let c = real_analytic_delta(&mut r, 2) / q.clone();
    let w1 = generating_diag(&a, &b, 10).unwrap();
    let w2 = generating_inhom(&a, &b, &c, 10).unwrap();
    assert_eq!(tk_from_q_diag(&a, &b, 0), ExactFn::one());
    assert_eq!(tk_from_q_diag(&a, &b, 1), a.clone() + b.clone());
    for k in 0..=4 {
        let diag = extract_tk(&w1, k).unwrap();
        assert_eq!(diag, tk_from_q_diag(&a, &b, k), "k={k}");
        assert_eq!(
            diag,
            det_solution(&(a.clone() + b.clone()), &phi, k),
            "k={k}"
        );
        let inhom = extract_tk(&w2, k).unwrap();
        assert_eq!(
            inhom,
            det_solution(&(a.clone() + b.clone() + c.clone()), &phi, k),
            "k={k}"
        );
    }
}
