mod common;

use common::{oracle_holevo, random_sgad_params, Bath};
use proptest::prelude::*;
use qswitch::channels::{sgad_kraus, sgad_params_from_bath, BathConfig, KrausSet, SqueezedThermalBath};
use qswitch::information::{
    bell_mutual_information, holevo, key_information, shannon_entropy, signal_ensemble, signal_ensemble_centered,
    werner_param_for_key_info, KeyInfo,
};
use qswitch::states::{BellIndex, WernerParam};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

fn bath_channel(r: f64, temperature: f64, t: f64) -> KrausSet {
    let cfg = BathConfig::new(r, temperature, t, 1.0).unwrap();
    sgad_kraus(&sgad_params_from_bath(&cfg, &SqueezedThermalBath::default()).unwrap()).unwrap()
}

fn chi(param: WernerParam, ks: Option<&KrausSet>) -> f64 {
    holevo(&signal_ensemble(param, ks).unwrap()).unwrap()
}

fn psi() -> impl Strategy<Value = WernerParam> {
    (0.0..=FRAC_PI_2).prop_map(|p| WernerParam::new(p).unwrap())
}

#[test]
fn key_information_by_hand_at_pi_over_six() {
    // w = (5/8, 1/8, 1/8, 1/8)
    let h = 0.625 * (1.6f64).log2() + 3.0 * 0.125 * 3.0;
    let c = key_information(WernerParam::new(std::f64::consts::FRAC_PI_6).unwrap()).bits();
    assert!((c - (2.0 - h)).abs() < 1e-12);
}

#[test]
fn key_information_endpoints() {
    assert!(key_information(WernerParam::new(0.0).unwrap()).bits().abs() < 1e-12);
    assert!((key_information(WernerParam::PURE).bits() - 2.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn noiseless_holevo_equals_key_information(p in psi()) {
        prop_assert!((chi(p, None) - key_information(p).bits()).abs() < 1e-9);
    }

    #[test]
    fn center_does_not_matter(p in psi(), center in 0usize..4) {
        let e = signal_ensemble_centered(p, BellIndex::from_ordinal(center), None).unwrap();
        prop_assert!((holevo(&e).unwrap() - chi(p, None)).abs() < 1e-10);
    }

    #[test]
    fn key_information_inverts(c in 0.0..=2.0f64) {
        let p = werner_param_for_key_info(KeyInfo::new(c).unwrap());
        prop_assert!((key_information(p).bits() - c).abs() < 1e-9);
    }

    #[test]
    fn key_information_is_monotone(a in 0.0..=FRAC_PI_2, b in 0.0..=FRAC_PI_2) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let c = |x: f64| key_information(WernerParam::new(x).unwrap()).bits();
        prop_assert!(c(lo) <= c(hi) + 1e-12);
    }

    #[test]
    fn channels_never_add_information(p in psi(), seed in any::<u64>()) {
        let ks = sgad_kraus(&random_sgad_params(&mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        prop_assert!(chi(p, Some(&ks)) <= chi(p, None) + 1e-10);
    }

    #[test]
    fn bell_readout_is_bounded_by_holevo(p in psi(), seed in any::<u64>()) {
        let ks = sgad_kraus(&random_sgad_params(&mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let e = signal_ensemble(p, Some(&ks)).unwrap();
        prop_assert!(bell_mutual_information(&e).unwrap() <= holevo(&e).unwrap() + 1e-10);
    }

    #[test]
    fn shannon_entropy_is_bounded(w in prop::array::uniform4(0.0..1.0f64)) {
        let total: f64 = w.iter().sum();
        prop_assume!(total > 1e-6);
        let p: Vec<f64> = w.iter().map(|x| x / total).collect();
        let h = shannon_entropy(&p).unwrap();
        prop_assert!((-1e-12..=2.0 + 1e-12).contains(&h));
    }
}

#[test]
fn noiseless_bell_readout_attains_holevo() {
    for i in 0..=10 {
        let p = WernerParam::new(FRAC_PI_2 * i as f64 / 10.0).unwrap();
        let e = signal_ensemble(p, None).unwrap();
        assert!((bell_mutual_information(&e).unwrap() - holevo(&e).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn noisy_holevo_matches_master_equation_oracle() {
    for &(r, t) in &[(0.0, 0.5), (-0.2, 0.5), (0.3, 0.5), (0.3, 2.0), (-1.0, 1.0)] {
        for &psi in &[0.3, 0.9, FRAC_PI_2] {
            let p = WernerParam::new(psi).unwrap();
            let bath = Bath::new(r, 0.1, 1.0);
            let evolve = move |m: &common::M2| bath.evolve(m, t, 4000);
            let want = oracle_holevo(p.weights(), Some(&evolve));
            let got = chi(p, Some(&bath_channel(r, 0.1, t)));
            assert!((got - want).abs() < 1e-7, "r={r} t={t} psi={psi}: {got} vs {want}");
        }
    }
}

#[test]
fn squeezing_lowers_information_at_half_time() {
    // chi against r at T=0.1, t=0.5 for several key-information levels
    for c in [0.5, 1.0, 1.5, 2.0] {
        let p = werner_param_for_key_info(KeyInfo::new(c).unwrap());
        let at = |r: f64| chi(p, Some(&bath_channel(r, 0.1, 0.5)));
        let mut prev = at(0.0);
        for k in 1..=10 {
            let r = 0.1 * k as f64;
            let (up, down) = (at(r), at(-r));
            assert!(up < prev + 1e-12 && down < prev + 1e-12, "c={c} r={r}");
            prev = up.max(down);
        }
    }
}

#[test]
fn noise_gap_peaks_for_pure_states() {
    for r in [0.0, -0.2, 0.3] {
        let ks = bath_channel(r, 0.1, 0.5);
        let gaps: Vec<f64> = (0..50)
            .map(|i| {
                let p = WernerParam::new(FRAC_PI_2 * i as f64 / 49.0).unwrap();
                chi(p, None) - chi(p, Some(&ks))
            })
            .collect();
        assert!(gaps.iter().all(|&g| g > -1e-12));
        let best = gaps.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        assert_eq!(best, 49, "r={r}");
    }
}

#[test]
fn more_time_means_less_information() {
    let p = werner_param_for_key_info(KeyInfo::new(1.0).unwrap());
    let mut prev = chi(p, None);
    for k in 1..=20 {
        let now = chi(p, Some(&bath_channel(0.0, 0.1, 0.15 * k as f64)));
        assert!(now <= prev + 1e-12);
        prev = now;
    }
}
