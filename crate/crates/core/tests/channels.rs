mod common;

use common::{random_density, random_sgad_params, Bath, M2};
use proptest::prelude::*;
use qswitch::channels::{
    apply_channel, map_of, sgad_kraus, sgad_operators, sgad_params_from_bath, verify_completeness, BathConfig,
    ChannelError, KrausSet, SgadParams, SqueezedThermalBath,
};
use qswitch::linalg::{ComplexMatrix, DensityMatrix, Subsystem};
use qswitch::states::{bell_projector, BellIndex};
use qswitch::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params() -> impl Strategy<Value = SgadParams> {
    any::<u64>().prop_map(|seed| random_sgad_params(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn state() -> impl Strategy<Value = DensityMatrix> {
    any::<u64>().prop_map(|seed| random_density(4, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn valid_parameters_are_complete(p in params()) {
        prop_assert!(verify_completeness(&sgad_operators(&p)) <= 1e-12);
        prop_assert!(sgad_kraus(&p).is_ok());
    }

    #[test]
    fn channel_output_is_a_state(p in params(), rho in state(), second in any::<bool>()) {
        let target = if second { Subsystem::Second } else { Subsystem::First };
        let out = apply_channel(&rho, &sgad_kraus(&p).unwrap(), target).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-9);
        prop_assert!(out.matrix().hermiticity_deviation() < 1e-12);
        prop_assert!(out.eigenvalues().unwrap().iter().all(|&l| l >= -1e-9));
    }

    #[test]
    fn composition_matches_sequential_application(p in params(), q in params(), rho in state()) {
        let (a, b) = (sgad_kraus(&p).unwrap(), sgad_kraus(&q).unwrap());
        let seq = apply_channel(&apply_channel(&rho, &a, Subsystem::First).unwrap(), &b, Subsystem::First).unwrap();
        let composed = apply_channel(&rho, &a.then(&b), Subsystem::First).unwrap();
        prop_assert!(seq.matrix().max_abs_diff(composed.matrix()) < 1e-12);
        prop_assert!(verify_completeness(&a.then(&b)) < 1e-12);
    }

    #[test]
    fn unbalanced_weights_are_rejected(p1 in 0.0..1.0f64, p2 in 0.0..1.0f64) {
        prop_assume!((p1 + p2 - 1.0).abs() > 1e-6);
        let p = SgadParams { p1, p2, ..SgadParams::IDENTITY };
        match sgad_kraus(&p) {
            Err(ChannelError::CompletenessViolation { residual, .. }) => {
                prop_assert!((residual - (p1 + p2 - 1.0).abs()).abs() < 1e-12)
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn map_of_matches_kraus_action(p in params()) {
        let ks = sgad_operators(&p);
        let m = map_of(&p);
        let e = |i: usize, j: usize| ComplexMatrix::from_fn(2, |a, b| {
            Complex64::new(if (a, b) == (i, j) { 1.0 } else { 0.0 }, 0.0)
        });
        let excited = ks.apply_raw(&e(0, 0));
        let ground = ks.apply_raw(&e(1, 1));
        let coh = ks.apply_raw(&e(0, 1));
        let rev = ks.apply_raw(&e(1, 0));
        prop_assert!((excited[(0, 0)].re - (1.0 - m.decay)).abs() < 1e-12);
        prop_assert!((ground[(0, 0)].re - m.excitation).abs() < 1e-12);
        prop_assert!((coh[(0, 1)] - m.coherence).norm() < 1e-12);
        prop_assert!((rev[(0, 1)] - m.cross).norm() < 1e-12);
    }
}

fn basis(i: usize, j: usize) -> M2 {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    m[i][j] = Complex64::new(1.0, 0.0);
    m
}

/// Compares the provider's Kraus set with a direct integration of the bath
/// master equation on all four matrix units.
fn provider_vs_master_equation(r: f64, temperature: f64, t: f64, gamma0: f64) -> f64 {
    let cfg = BathConfig::new(r, temperature, t, gamma0).unwrap();
    let ks = sgad_kraus(&sgad_params_from_bath(&cfg, &SqueezedThermalBath::default()).unwrap()).unwrap();
    let bath = Bath::new(r, temperature, gamma0);
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let want = bath.evolve(&basis(i, j), t, 4000);
            let got = ks.apply_raw(&ComplexMatrix::from_fn(2, |a, b| basis(i, j)[a][b]));
            for a in 0..2 {
                for b in 0..2 {
                    worst = worst.max((got[(a, b)] - want[a][b]).norm());
                }
            }
        }
    }
    worst
}

#[test]
fn provider_reproduces_master_equation() {
    for &r in &[-1.0, -0.2, 0.0, 0.3, 1.0] {
        for &temperature in &[0.0, 0.1, 1.0, 5.0] {
            for &t in &[0.0, 0.1, 0.5, 2.0, 4.0] {
                for &gamma0 in &[0.5, 1.0, 2.0] {
                    let err = provider_vs_master_equation(r, temperature, t, gamma0);
                    assert!(err < 1e-8, "r={r} T={temperature} t={t} g={gamma0}: {err:e}");
                }
            }
        }
    }
}

#[test]
fn vacuum_bath_decays_excited_population_exponentially() {
    for &t in &[0.0, 0.3, 1.0, 2.5] {
        let cfg = BathConfig::new(0.0, 0.0, t, 1.3).unwrap();
        let ks = sgad_kraus(&sgad_params_from_bath(&cfg, &SqueezedThermalBath::default()).unwrap()).unwrap();
        let out = ks.apply_raw(&ComplexMatrix::diagonal(&[1.0, 0.0]));
        assert!((out[(0, 0)].re - (-1.3 * t).exp()).abs() < 1e-12);
    }
}

#[test]
fn provider_covers_a_dense_domain() {
    let bath = SqueezedThermalBath::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    use rand::Rng;
    for _ in 0..2000 {
        let cfg = BathConfig::new(
            rng.random_range(-1.5..1.5),
            rng.random_range(0.0..3.0),
            rng.random_range(0.0..5.0),
            rng.random_range(0.1..3.0),
        )
        .unwrap();
        let p = sgad_params_from_bath(&cfg, &bath).unwrap_or_else(|e| panic!("{cfg:?}: {e}"));
        assert!(verify_completeness(&sgad_operators(&p)) < 1e-12);
    }
}

#[test]
fn disentangling_channel_on_bell_pair() {
    let full = SgadParams {
        alpha: 1.0,
        ..SgadParams::IDENTITY
    };
    let out = apply_channel(&bell_projector(BellIndex::PHI_PLUS), &sgad_kraus(&full).unwrap(), Subsystem::First)
        .unwrap();
    let want = ComplexMatrix::diagonal(&[0.0, 0.0, 0.5, 0.5]);
    assert!(out.matrix().max_abs_diff(&want) < 1e-12);
}

#[test]
fn identity_kraus_set_is_a_no_op() {
    let rho = random_density(4, &mut ChaCha8Rng::seed_from_u64(1));
    let out = apply_channel(&rho, &KrausSet::identity(), Subsystem::Second).unwrap();
    assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
}
