use hirota_core::chain::*;
use hirota_core::hirota::hirota_residual;
use hirota_core::specfun::{sample_points, Field, FloatFn};
use hirota_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pairs(seed: u64, count: usize) -> Vec<(C64, C64)> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut point = || C64::new(r.gen_range(-1.3..1.3), r.gen_range(-1.3..1.3));
    (0..count).map(|_| (point(), point())).collect()
}

fn open_specs() -> Vec<ChainSpec> {
    vec![
        ChainSpec::open(2, 0.7, 1.3, 0.0),
        ChainSpec::open(2, 0.7, 1.3, 0.5),
        ChainSpec::open(3, 0.4, -0.9, 0.5),
    ]
}

#[test]
fn fused_transfer_matrices_commute() {
    let mut specs = vec![ChainSpec::periodic(2), ChainSpec::periodic(3)];
    specs.extend(open_specs());
    for spec in specs {
        for (u, v) in random_pairs(5, 2) {
            for two_j in 1..=3 {
                for two_jp in two_j..=3 {
                    let a =
                        transfer(&spec, two_j, u, Normalization::Chi, AuxRepr::Symmetric).unwrap();
                    let b =
                        transfer(&spec, two_jp, v, Normalization::Chi, AuxRepr::Symmetric).unwrap();
                    let c = relative_commutator(&a, &b).unwrap();
                    assert!(c <= 1e-10, "{spec:?} 2j={two_j} 2j'={two_jp}: {c:e}");
                }
            }
        }
    }
}

#[test]
fn two_site_periodic_spectrum() {
    let h = hamiltonian_periodic(&ChainSpec::periodic(2)).unwrap();
    let e = hermitian_spectrum(&h);
    let expect = [-2.0, 0.0, 0.0, 0.0];
    for (a, b) in e.iter().zip(expect) {
        assert!((a - b).abs() < 1e-10, "{e:?}");
    }
}

#[test]
fn families_cover_the_hilbert_space_with_the_right_energies() {
    for spec in [ChainSpec::periodic(3), ChainSpec::open(2, 0.7, 1.3, 0.5)] {
        let fams = spectrum_family(&spec, 1).unwrap();
        let dim: usize = fams.iter().map(|f| f.multiplicity).sum();
        assert_eq!(dim, 1 << spec.n);
        let mut from_families: Vec<f64> = fams
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.energy, f.multiplicity))
            .collect();
        from_families.sort_by(f64::total_cmp);
        let direct = hermitian_spectrum(&hamiltonian_pauli(&spec).unwrap());
        for (a, b) in from_families.iter().zip(&direct) {
            assert!(
                (a - b).abs() < 1e-9,
                "{spec:?}: {from_families:?} vs {direct:?}"
            );
        }
    }
}

#[test]
fn open_families_start_at_one() {
    for f in spectrum_family(&ChainSpec::open(2, 0.7, 1.3, 0.0), 2).unwrap() {
        assert_eq!(f.t[0], FloatFn::one());
    }
}

#[test]
fn trace_of_the_fundamental_transfer_matrix() {
    for spec in [ChainSpec::periodic(3), ChainSpec::open(2, 0.7, 1.3, 0.5)] {
        let fams = spectrum_family(&spec, 1).unwrap();
        for u in sample_points(9, 6) {
            let t = transfer(
                &spec,
                1,
                u - C64::new(0.0, 0.5),
                Normalization::Chi,
                AuxRepr::Symmetric,
            )
            .unwrap();
            let sum: C64 = fams
                .iter()
                .map(|f| f.t[1].eval_c64(u) * f.multiplicity as f64)
                .sum();
            let trace = t.trace();
            assert!(
                (sum - trace).norm() <= 1e-8 * trace.norm().max(1.0),
                "{spec:?} at {u}"
            );
        }
    }
}

#[test]
fn interpolation_and_normalization_records() {
    for spec in [ChainSpec::periodic(4), ChainSpec::open(3, 0.4, -0.9, 0.5)] {
        let sp = spectrum(&spec, 3, &SpectrumOptions::default()).unwrap();
        assert_eq!(sp.normalization.len(), 5);
        for rec in &sp.normalization {
            assert!(rec.interpolation_residual <= 1e-9, "{rec:?}");
            assert!(rec.anchor_deviation <= 1e-8, "{rec:?}");
            assert_eq!(rec.raw_degree, raw_degree(&spec, rec.k));
        }
    }
}

#[test]
fn hirota_holds_on_exact_diagonalization_data() {
    let pts = sample_points(42, 20);
    for spec in [ChainSpec::periodic(2), ChainSpec::open(2, 0.7, 1.3, 0.5)] {
        for f in spectrum_family(&spec, 3).unwrap() {
            for k in 0..=3 {
                let r = hirota_residual(&f, k).unwrap().relative(&pts);
                assert!(r <= 1e-8, "{spec:?} {} k={k}: {r:e}", f.label);
            }
        }
    }
}

#[test]
fn spectra_are_reproducible() {
    let spec = ChainSpec::open(2, 0.7, 1.3, 0.5);
    let a =
        serde_json::to_string(&spectrum(&spec, 2, &SpectrumOptions::default()).unwrap()).unwrap();
    let b =
        serde_json::to_string(&spectrum(&spec, 2, &SpectrumOptions::default()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn invalid_requests_are_rejected() {
    assert!(matches!(
        spectrum_family(&ChainSpec::periodic(0), 1),
        Err(Error::InvalidParameter { .. })
    ));
    assert!(matches!(
        spectrum_family(&ChainSpec::open(2, 0.0, 1.0, 0.0), 1),
        Err(Error::InvalidParameter { .. })
    ));
    assert!(matches!(
        spectrum_family(&ChainSpec::periodic(MAX_SITES + 1), 1),
        Err(Error::Guard(_))
    ));
    assert!(matches!(
        spectrum_family(&ChainSpec::periodic(2), MAX_KMAX + 1),
        Err(Error::Guard(_))
    ));
}
