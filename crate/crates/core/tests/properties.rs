use core::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use tripleslit_core::classical::{build_classical_paths, classical_chain};
use tripleslit_core::gchain::propagate;
use tripleslit_core::nonclassical::{
    build_nonclassical_path, build_zchain, chain_gouy_nc, gouy_nc, HopPrefactor,
};
use tripleslit_core::oracle::{quad_classical, quad_nonclassical, QuadratureSpec};
use tripleslit_core::params::estimate_epsilon;
use tripleslit_core::phase::congruent;
use tripleslit_core::sorkin::{linspace, PathSet, SorkinOptions};
use tripleslit_core::{Complex, EpsilonPolicy, ExperimentConfig};

/// Electron geometries around the reference experiment.
fn configs() -> impl Strategy<Value = ExperimentConfig> {
    (
        40e-9..100e-9f64,
        40e-9..100e-9f64,
        400e-9..1000e-9f64,
        5e-9..30e-9f64,
        1e-9..20e-9f64,
    )
        .prop_map(|(sigma0, beta, d, t, tau)| ExperimentConfig {
            sigma0,
            beta,
            d,
            t,
            tau,
            epsilon: EpsilonPolicy::Auto,
            ..ExperimentConfig::electron()
        })
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn propagation_is_a_semigroup(cfg in configs(), split in 0.05..0.95f64) {
        let mh = cfg.mass_over_hbar();
        let s = *classical_chain(&cfg.with_tau(1e-12), cfg.d).unwrap().state();
        let (a, _) = propagate(&s, split * cfg.tau, mh).unwrap();
        let (ab, _) = propagate(&a, (1.0 - split) * cfg.tau, mh).unwrap();
        let (direct, _) = propagate(&s, cfg.tau, mh).unwrap();
        prop_assert!(rel(ab.a, direct.a) < 1e-12);
        prop_assert!(rel(ab.b, direct.b) < 1e-12);
        prop_assert!((ab.c - direct.c).norm() < 1e-12 * direct.c.norm().max(1.0));
    }

    #[test]
    fn outer_paths_are_mirror_images(cfg in configs(), x in -1e-4..1e-4f64) {
        let [p1, _, p3] = build_classical_paths(&cfg).unwrap();
        prop_assert_eq!(p3.evaluate_state(x), p1.evaluate_state(-x));
    }

    #[test]
    fn norm_is_conserved_in_flight(cfg in configs()) {
        let at_slit = classical_chain(&cfg.with_tau(1e-15), cfg.d).unwrap().state().norm();
        let on_screen = classical_chain(&cfg, cfg.d).unwrap().state().norm();
        prop_assert!((on_screen / at_slit - 1.0).abs() < 1e-10);
    }

    #[test]
    fn zchain_and_chain_gouy_agree(cfg in configs()) {
        let eps = estimate_epsilon(&cfg).unwrap();
        let z = gouy_nc(&build_zchain(&cfg, eps).unwrap());
        let c = chain_gouy_nc(&cfg, eps, HopPrefactor::Combined).unwrap();
        // the arctangent is only defined modulo π/2
        prop_assert!(congruent(z, c, FRAC_PI_2, 1e-8), "{} vs {}", z, c);
    }

    #[test]
    fn cross_term_expansion_is_exact(cfg in configs(), u in -1.0..1.0f64) {
        let set = PathSet::build(&cfg, SorkinOptions::default()).unwrap();
        let x = 3.0 * u * set.classical()[1].screen_width();
        let e = set.excess_intensity(x);
        let d = set.excess_intensity_direct(x);
        prop_assert!((e - d).abs() <= 1e-10 * d.abs().max(set.excess_intensity(0.0).abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn oracle_matches_closed_form(cfg in configs()) {
        let spec = QuadratureSpec::default();
        let eps = estimate_epsilon(&cfg).unwrap();
        let [_, _, direct] = build_classical_paths(&cfg).unwrap();
        let looping = build_nonclassical_path(&cfg, eps, HopPrefactor::Combined).unwrap().wave;
        let xs = linspace(-3.0 * direct.screen_width(), 3.0 * direct.screen_width(), 11);
        let q = quad_classical(&cfg, cfg.d, &xs, &spec).unwrap();
        for (x, v) in xs.iter().zip(&q) {
            prop_assert!(rel(*v, direct.evaluate_state(*x)) < 1e-5);
        }
        let xs = linspace(-3.0 * looping.screen_width(), 3.0 * looping.screen_width(), 11);
        let q = quad_nonclassical(&cfg, eps, HopPrefactor::Combined, &xs, &spec).unwrap();
        for (x, v) in xs.iter().zip(&q) {
            prop_assert!(rel(*v, looping.evaluate_state(*x)) < 1e-5);
        }
    }
}
