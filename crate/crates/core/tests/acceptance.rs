//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use curvop::curv::{construct_initial_morphism, construct_initial_morphism_reversed, terminal_morphism, CurvObject};
use curvop::dg::check_square_zero;
use curvop::endo::{check_structure, twist_algebra, AlgebraManifest, AlgebraStructure, Element};
use curvop::homology::{bracket_kappa_windows, dt_windows, WindowCheck};
use curvop::presets::{build_preset, ell, mu, PresetName};
use curvop::twisting::{
    apply_dt, counit, eta_cainf, eta_clinf, eta_morphism, section_sigma, solve_dt, unit_of, verify_chain_map,
};
use curvop::{Mode, OperadElement, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn name_of(mode: Mode, n: usize) -> String {
    match mode {
        Mode::Nonsymmetric => mu(n),
        Mode::Symmetric => ell(n),
    }
}

fn presets_square_zero() -> Outcome {
    let mut checked = 0;
    for (preset, bound) in [
        (PresetName::CAinf, 5),
        (PresetName::AinfPlus, 5),
        (PresetName::Ainf, 5),
        (PresetName::CLinf, 4),
        (PresetName::LinfPlus, 4),
        (PresetName::Linf, 4),
    ] {
        let p = build_preset(preset, bound + 2).map_err(|e| e.to_string())?;
        let r = check_square_zero(&p.differential, bound);
        ensure(r.all_pass() && r.skipped() == 0, || format!("{preset}: {r}"))?;
        checked += r.passed();
    }
    Ok(format!("{checked} generators"))
}

fn eta_chain_map() -> Outcome {
    // images are built one α-degree higher so that d(η(g)) is exact through K
    let mut checked = 0;
    for (mode, arity, precision) in [(Mode::Nonsymmetric, 3, 3), (Mode::Symmetric, 2, 2)] {
        let eta = eta_morphism(mode, arity, precision + 1).map_err(|e| e.to_string())?;
        let r = verify_chain_map(&eta, arity);
        ensure(r.all_pass() && r.skipped() == 0, || format!("{mode}: {r}"))?;
        checked += r.passed();
    }
    Ok(format!("{checked} generators"))
}

fn initiality() -> Outcome {
    for q in [CurvObject::cainf(6), CurvObject::clinf(6)] {
        let q = q.map_err(|e| e.to_string())?;
        let a = construct_initial_morphism(&q, 4).map_err(|e| e.to_string())?;
        let b = construct_initial_morphism_reversed(&q, 4).map_err(|e| e.to_string())?;
        ensure(a.morphism.images == b.morphism.images, || "run orders disagree".into())?;
        for n in 0..=4 {
            let name = name_of(q.mode, n);
            let got = a.morphism.image(&name).map_err(|e| e.to_string())?;
            let want = q.element(&name).map_err(|e| e.to_string())?;
            ensure(got == &want, || format!("{name} maps to {got}"))?;
        }
    }
    for mode in [Mode::Nonsymmetric, Mode::Symmetric] {
        let t = CurvObject::t(mode).map_err(|e| e.to_string())?;
        let a = construct_initial_morphism(&t, 4).map_err(|e| e.to_string())?;
        let b = construct_initial_morphism_reversed(&t, 4).map_err(|e| e.to_string())?;
        ensure(a.morphism.images == b.morphism.images, || "run orders disagree on T".into())?;
        for n in 0..=4 {
            let got = a.morphism.image(&name_of(mode, n)).map_err(|e| e.to_string())?;
            let ok = if n == 0 { got == &t.kappa_element() } else { got.is_zero() };
            ensure(ok, || format!("T: arity {n} maps to {got}"))?;
        }
        let term = terminal_morphism(&t).map_err(|e| e.to_string())?;
        ensure(term.image("alpha").map_err(|e| e.to_string())? == &t.element("alpha").unwrap(), || {
            "terminal morphism of T is not the identity".into()
        })?;
    }
    Ok("cAinf, cLinf, T up to arity 4".into())
}

fn unit_reconstruction() -> Outcome {
    let q = CurvObject::cainf(7).map_err(|e| e.to_string())?;
    let phi = unit_of(&q, 3).map_err(|e| e.to_string())?;
    for n in 0..=3 {
        let want = eta_cainf(n, 3).map_err(|e| e.to_string())?;
        ensure(phi.image(&mu(n)).ok() == Some(&want), || format!("mu_{n} differs"))?;
    }
    let q = CurvObject::clinf(6).map_err(|e| e.to_string())?;
    let phi = unit_of(&q, 2).map_err(|e| e.to_string())?;
    for n in 0..=2 {
        let want = eta_clinf(n, 2).map_err(|e| e.to_string())?;
        ensure(phi.image(&ell(n)).ok() == Some(&want), || format!("l_{n} differs"))?;
    }
    Ok("cAinf K=3, cLinf K=2".into())
}

fn all_zero(w: &[WindowCheck]) -> Result<(), String> {
    match w.iter().find(|c| !c.passed()) {
        Some(c) => Err(c.to_string()),
        None => Ok(()),
    }
}

fn bracket_acyclic() -> Outcome {
    let w = bracket_kappa_windows(Mode::Nonsymmetric, 3, 2).map_err(|e| e.to_string())?;
    all_zero(&w)?;
    let largest = w.iter().map(|c| c.dimension).max().unwrap_or(0);
    Ok(format!("{} slices, largest {largest}", w.len()))
}

fn dt_acyclic() -> Outcome {
    let mut slices = 0;
    for mode in [Mode::Nonsymmetric, Mode::Symmetric] {
        let w = dt_windows(mode, 3, 3).map_err(|e| e.to_string())?;
        all_zero(&w)?;
        slices += w.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..50 {
        let lambda = common::random_closed_weight_one(&mut rng, Mode::Symmetric);
        let rho = solve_dt(&lambda).map_err(|e| format!("sample {i}: {e}"))?;
        let back = apply_dt(&rho).map_err(|e| e.to_string())?;
        ensure(back == lambda, || format!("sample {i}: d_T(solve) = {back}, expected {lambda}"))?;
    }
    Ok(format!("{slices} slices, 50 random round trips"))
}

fn counit_triangle() -> Outcome {
    for (preset, mode, arity) in [(PresetName::CAinf, Mode::Nonsymmetric, 3), (PresetName::CLinf, Mode::Symmetric, 2)] {
        let p = build_preset(preset, 8).map_err(|e| e.to_string())?;
        let eps = counit(&p, 3).map_err(|e| e.to_string())?;
        let sigma = section_sigma(&p, 3).map_err(|e| e.to_string())?;
        let eta = eta_morphism(mode, arity, 3).map_err(|e| e.to_string())?;
        for g in &p.generators {
            let x = p.element(&g.name).map_err(|e| e.to_string())?;
            let back = eps.apply(sigma.image(&g.name).unwrap()).map_err(|e| e.to_string())?;
            ensure(back == x, || format!("eps o sigma on {}", g.name))?;
        }
        for n in 0..=arity + 1 {
            let name = name_of(mode, n);
            let back = eps.apply(eta.image(&name).unwrap()).map_err(|e| e.to_string())?;
            ensure(back.with_precision(None) == p.element(&name).unwrap(), || format!("eps o eta on {name}"))?;
        }
        let q = CurvObject::from_presentation(&p, &name_of(mode, 0)).map_err(|e| e.to_string())?;
        let phi = unit_of(&q, 2).map_err(|e| e.to_string())?;
        let eps2 = counit(&q.presentation().unwrap(), 2).map_err(|e| e.to_string())?;
        for (name, img) in &phi.morphism.images {
            let back = eps2.apply(img).map_err(|e| e.to_string())?.with_precision(None);
            ensure(back == p.element(name).unwrap(), || format!("eps o Phi on {name}"))?;
        }
    }
    Ok("both modes".into())
}

/// `d_A a + Σ_k μ_k(a, …, a)` and `μ_n^a` by direct expansion.
fn oracle_curvature(s: &AlgebraStructure, a: &Element) -> Element {
    let mut c = s.d_a.evaluate(std::slice::from_ref(a)).unwrap();
    for k in 0..=s.nilpotency_bound {
        c = c.add(&s.op(k).evaluate(&vec![a.clone(); k]).unwrap());
    }
    c
}

fn algebra_twisting() -> Outcome {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests/square-zero.json");
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let m = AlgebraManifest::from_json(&text).map_err(|e| e.to_string())?;
    let s = &m.structure;
    let x = s.space.position("x").map_err(|e| e.to_string())?;

    let zero = twist_algebra(s, &Element::zero(0)).map_err(|e| e.to_string())?;
    ensure(&zero == s, || "twist by 0 changed the structure".into())?;

    let mut mc = Vec::new();
    for t in -10..=10 {
        let a = Element::from_coords(&s.space, 0, [(x, Rational::from(t))]).unwrap();
        if oracle_curvature(s, &a).is_zero() {
            mc.push(a);
        }
    }
    ensure(mc.len() == 2, || format!("brute force found {} MC elements", mc.len()))?;
    for a in &mc {
        let tw = twist_algebra(s, a).map_err(|e| e.to_string())?;
        ensure(tw.op(0).is_zero(), || "twisted mu_0 is nonzero at an MC element".into())?;
        let r = check_structure(&tw, 4);
        ensure(r.all_pass(), || format!("{r}"))?;
    }

    let a = m.element("not_mc").map_err(|e| e.to_string())?;
    let tw = twist_algebra(s, a).map_err(|e| e.to_string())?;
    let curv = oracle_curvature(s, a);
    ensure(!curv.is_zero(), || "not_mc is flat".into())?;
    ensure(tw.op(0).evaluate(&[]).unwrap() == curv, || "twisted mu_0 differs from the curvature".into())?;
    // μ₁^a(v) = μ₁(v) + μ₂(a, v) + μ₂(v, a) at nilpotency bound 2
    for v in 0..s.space.dim() {
        let e = Element::basis_vector(&s.space, v);
        let want = s
            .op(1)
            .evaluate(std::slice::from_ref(&e))
            .unwrap()
            .add(&s.op(2).evaluate(&[a.clone(), e.clone()]).unwrap())
            .add(&s.op(2).evaluate(&[e.clone(), a.clone()]).unwrap());
        ensure(tw.op(1).evaluate(&[e]).unwrap() == want, || format!("mu_1^a on {}", s.space.name(v)))?;
    }
    ensure(tw.op(2) == s.op(2), || "mu_2^a differs from mu_2".into())?;
    Ok(format!("MC elements {}", mc.iter().map(|a| a.display(&s.space)).collect::<Vec<_>>().join(", ")))
}

fn mutation_sensitivity() -> Outcome {
    let p = build_preset(PresetName::CAinf, 5).map_err(|e| e.to_string())?;
    let dmu2 = p.differential.value(&mu(2)).map_err(|e| e.to_string())?.clone();
    let mut caught = 0;
    for (t, c) in dmu2.terms() {
        let flipped = dmu2
            .add(&OperadElement::from_tree(t, -(c.clone() + c.clone()), Mode::Nonsymmetric).unwrap())
            .unwrap();
        let mut d = p.differential.clone();
        d.set(&mu(2), flipped).map_err(|e| e.to_string())?;
        ensure(!check_square_zero(&d, 3).all_pass(), || format!("flipping {t} went unnoticed"))?;
        caught += 1;
    }
    let mut eta = eta_morphism(Mode::Nonsymmetric, 3, 4).map_err(|e| e.to_string())?;
    let e0 = eta.image(&mu(0)).unwrap().clone();
    let without = e0.filter(|t| t.count_named("kappa_T") == 0);
    ensure(without != e0, || "eta(mu_0) has no kappa term".into())?;
    eta.morphism.images.insert(mu(0), without);
    ensure(!verify_chain_map(&eta, 3).all_pass(), || "deleting the kappa term went unnoticed".into())?;
    Ok(format!("{} of {} mutations detected", caught + 1, dmu2.len() + 1))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("preset coherence", presets_square_zero),
        ("eta is a chain map", eta_chain_map),
        ("initiality and uniqueness", initiality),
        ("unit reproduces eta", unit_reconstruction),
        ("bracket with kappa is acyclic", bracket_acyclic),
        ("d_T windows and solver", dt_acyclic),
        ("counit, section and triangle", counit_triangle),
        ("algebra twisting", algebra_twisting),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
