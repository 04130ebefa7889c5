mod common;

use curvop::curv::{construct_initial_morphism, construct_initial_morphism_reversed, validate_curv, CurvObject};
use curvop::morphism::OperadMorphism;
use curvop::presets::{build_preset, coproduct_with_t, ell, mu, PresetName, ALPHA};
use curvop::twisting::{
    apply_dt, construct_unit, construct_unit_reversed, counit, eta, eta_clinf, eta_morphism, section_sigma,
    solve_dt, unit_of, verify_chain_map,
};
use curvop::Mode;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn symmetric_unit_is_eta() {
    let q = CurvObject::clinf(6).unwrap();
    let phi = unit_of(&q, 2).unwrap();
    for n in 0..=2 {
        assert_eq!(phi.image(&ell(n)).unwrap(), &eta_clinf(n, 2).unwrap(), "l_{n}");
    }
}

#[test]
fn run_order_does_not_matter() {
    for q in [CurvObject::cainf(6).unwrap(), CurvObject::clinf(5).unwrap()] {
        let a = construct_initial_morphism(&q, 4).unwrap();
        let b = construct_initial_morphism_reversed(&q, 4).unwrap();
        assert_eq!(a.morphism.images, b.morphism.images);
        let p = q.presentation().unwrap();
        let id = OperadMorphism::inclusion(q.mode, &p.table());
        let u = construct_unit(&q, &id, &p, 2).unwrap();
        let v = construct_unit_reversed(&q, &id, &p, 2).unwrap();
        assert_eq!(u.morphism.images, v.morphism.images);
    }
}

#[test]
fn unit_of_t() {
    for mode in [Mode::Nonsymmetric, Mode::Symmetric] {
        let q = CurvObject::t_named(mode, "a", "k").unwrap();
        assert!(validate_curv(&q, 0).all_pass());
        let phi = unit_of(&q, 3).unwrap();
        assert_eq!(phi.image("a").unwrap(), &phi.target.parse("a + alpha", 0, 0).unwrap());
        assert_eq!(phi.image("k").unwrap(), &phi.target.parse("k + kappa_T", 0, -1).unwrap());
        let r = verify_chain_map(&phi, 0);
        assert!(r.all_pass(), "{r}");
    }
}

#[test]
fn precision_zero_unit_is_f() {
    let q = CurvObject::cainf(5).unwrap();
    let phi = unit_of(&q, 0).unwrap();
    for n in 1..=3 {
        assert_eq!(phi.image(&mu(n)).unwrap(), &phi.target.element(&mu(n)).unwrap().with_precision(Some(0)));
    }
    assert_eq!(phi.image(&mu(0)).unwrap(), &phi.target.parse("kappa_T + mu_0", 0, -1).unwrap().with_precision(Some(0)));
}

#[test]
fn adjunction_triangle() {
    let cases = [
        CurvObject::cainf(7).unwrap(),
        CurvObject::clinf(6).unwrap(),
        CurvObject::t_named(Mode::Nonsymmetric, "a", "k").unwrap(),
    ];
    for q in cases {
        let p = q.presentation().unwrap();
        let phi = unit_of(&q, 2).unwrap();
        let eps = counit(&p, 2).unwrap();
        for (name, img) in &phi.morphism.images {
            let back = eps.apply(img).unwrap().with_precision(None);
            assert_eq!(back, p.element(name).unwrap().with_precision(None), "{name}");
        }
    }
}

#[test]
fn counit_section_and_eta() {
    for (preset, mode, bound) in [(PresetName::CAinf, Mode::Nonsymmetric, 3), (PresetName::CLinf, Mode::Symmetric, 2)] {
        let p = build_preset(preset, 8).unwrap();
        let eps = counit(&p, 3).unwrap();
        let sigma = section_sigma(&p, 3).unwrap();
        let e = eta_morphism(mode, bound, 3).unwrap();
        for g in &p.generators {
            let x = p.element(&g.name).unwrap();
            assert_eq!(eps.apply(sigma.image(&g.name).unwrap()).unwrap(), x);
        }
        for n in 0..=bound + 1 {
            let name = if mode == Mode::Nonsymmetric { mu(n) } else { ell(n) };
            assert_eq!(eps.apply(e.image(&name).unwrap()).unwrap().with_precision(None), p.element(&name).unwrap());
        }
    }
}

#[test]
fn eta_of_positive_arity_has_no_kappa_t() {
    for mode in [Mode::Nonsymmetric, Mode::Symmetric] {
        for n in 1..=3 {
            let e = eta(mode, n, 3).unwrap();
            assert!(e.terms().all(|(t, _)| t.count_named("kappa_T") == 0));
        }
        assert!(eta(mode, 0, 3).unwrap().terms().any(|(t, _)| t.count_named("kappa_T") == 1));
    }
}

#[test]
fn truncated_coproduct_has_alpha_and_kappa_t() {
    let p = build_preset(PresetName::CAinf, 3).unwrap();
    let s = coproduct_with_t(&p, 2).unwrap();
    assert_eq!(s.d(ALPHA).unwrap(), s.element("kappa_T").unwrap());
}

#[test]
fn solve_dt_round_trips_on_random_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for mode in [Mode::Nonsymmetric, Mode::Symmetric] {
        for _ in 0..25 {
            let lambda = common::random_closed_weight_one(&mut rng, mode);
            let rho = solve_dt(&lambda).unwrap();
            assert_eq!(apply_dt(&rho).unwrap(), lambda);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn solve_dt_inverts_dt(seed in any::<u64>(), sym in any::<bool>()) {
        let mode = if sym { Mode::Symmetric } else { Mode::Nonsymmetric };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = common::random_closed_weight_one(&mut rng, mode);
        let rho = solve_dt(&lambda).unwrap();
        prop_assert_eq!(apply_dt(&rho).unwrap(), lambda);
    }
}
