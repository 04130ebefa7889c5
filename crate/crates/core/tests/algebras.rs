use std::collections::BTreeMap;
use std::path::PathBuf;

use curvop::endo::{
    boundary, check_structure, curvature_of, endo_compose, twist_algebra, AlgebraManifest, AlgebraStructure, Element,
    GradedSpace, MultilinearMap,
};
use curvop::{Mode, Rational};
use proptest::prelude::*;

fn manifest(name: &str) -> AlgebraManifest {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests").join(name);
    AlgebraManifest::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const MANIFESTS: [&str; 3] = ["square-zero.json", "square-zero-sym.json", "truncated-polynomial.json"];

fn r(n: i64) -> Rational {
    Rational::from(n)
}

/// `Σ μ_{n+Σi}(a^{i₁}, x₁, …, x_n, a^{i_{n+1}})` in the nonsymmetric case and
/// `Σ_k 1/k! ℓ_{n+k}(a, …, a, x₁, …, x_n)` in the symmetric one, evaluated
/// op by op; arity 0 adds `d_A a`.
fn oracle_twisted(s: &AlgebraStructure, a: &Element, xs: &[Element]) -> Element {
    let n = xs.len();
    let degree = -1 + xs.iter().map(|x| x.degree).sum::<i64>();
    let mut out = Element::zero(degree);
    let extra = s.nilpotency_bound.saturating_sub(n);
    match s.mode {
        Mode::Nonsymmetric => {
            let mut stack = vec![vec![]];
            while let Some(v) = stack.pop() {
                if v.len() < n + 1 {
                    let used: usize = v.iter().sum();
                    for i in 0..=extra - used {
                        let mut w: Vec<usize> = v.clone();
                        w.push(i);
                        stack.push(w);
                    }
                    continue;
                }
                let mut inputs = Vec::new();
                for (j, &i) in v.iter().enumerate() {
                    inputs.extend(std::iter::repeat(a.clone()).take(i));
                    if j < n {
                        inputs.push(xs[j].clone());
                    }
                }
                out = out.add(&s.op(inputs.len()).evaluate(&inputs).unwrap());
            }
        }
        Mode::Symmetric => {
            let mut inv_fact = Rational::one();
            for k in 0..=extra {
                if k > 0 {
                    inv_fact = &inv_fact / &r(k as i64);
                }
                let mut inputs = vec![a.clone(); k];
                inputs.extend(xs.iter().cloned());
                out = out.add(&s.op(n + k).evaluate(&inputs).unwrap().scale(&inv_fact));
            }
        }
    }
    if n == 0 {
        out = out.add(&s.d_a.evaluate(std::slice::from_ref(a)).unwrap());
    }
    out
}

fn basis_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..dim).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

fn assert_matches_oracle(s: &AlgebraStructure, a: &Element) {
    let tw = twist_algebra(s, a).unwrap();
    for n in 0..=s.nilpotency_bound {
        for tuple in basis_tuples(s.space.dim(), n) {
            let xs: Vec<Element> = tuple.iter().map(|&i| Element::basis_vector(&s.space, i)).collect();
            let got = tw.op(n).evaluate(&xs).unwrap();
            let want = oracle_twisted(s, a, &xs);
            assert_eq!(got, want, "arity {n} on {tuple:?}");
        }
    }
}

#[test]
fn shipped_manifests_satisfy_their_relations() {
    for name in MANIFESTS {
        let m = manifest(name);
        let report = check_structure(&m.structure, 4);
        assert!(report.all_pass(), "{name}: {report}");
    }
}

#[test]
fn maurer_cartan_elements_are_flat() {
    for name in MANIFESTS {
        let m = manifest(name);
        for e in ["mc_plus", "mc_minus"] {
            let a = m.element(e).unwrap();
            assert!(curvature_of(&m.structure, a).unwrap().is_zero(), "{name} {e}");
            let tw = twist_algebra(&m.structure, a).unwrap();
            assert!(tw.op(0).is_zero());
            assert!(check_structure(&tw, 4).all_pass());
        }
        let c = curvature_of(&m.structure, m.element("not_mc").unwrap()).unwrap();
        assert!(!c.is_zero());
    }
}

#[test]
fn square_zero_curvature_values() {
    let m = manifest("square-zero.json");
    let y = m.structure.space.position("y").unwrap();
    let x = m.structure.space.position("x").unwrap();
    for t in -5..=5 {
        let a = Element::from_coords(&m.structure.space, 0, [(x, r(t))]).unwrap();
        let c = curvature_of(&m.structure, &a).unwrap();
        assert_eq!(c.coord(y), r((t + 3) * (t - 2)));
    }
}

#[test]
fn twisted_operations_match_direct_expansion() {
    for name in MANIFESTS {
        let m = manifest(name);
        for e in m.elements.values() {
            assert_matches_oracle(&m.structure, e);
        }
    }
}

#[test]
fn twisting_by_zero_is_identity() {
    for name in MANIFESTS {
        let m = manifest(name);
        assert_eq!(twist_algebra(&m.structure, &Element::zero(0)).unwrap(), m.structure);
    }
}

#[test]
fn composite_on_two_dimensional_space() {
    // f: (x, x) ↦ 3y, g: x ↦ y, h: (x, y) ↦ x, (y, x) ↦ 2x of degree 1
    let space = GradedSpace::new(vec![("x".into(), 0), ("y".into(), -1)]).unwrap();
    let mut f = MultilinearMap::new(2, -1);
    f.add_coeff(&space, 1, vec![0, 0], r(3)).unwrap();
    let mut g = MultilinearMap::new(1, -1);
    g.add_coeff(&space, 1, vec![0], r(1)).unwrap();
    let mut h = MultilinearMap::new(2, 1);
    h.add_coeff(&space, 0, vec![0, 1], r(1)).unwrap();
    h.add_coeff(&space, 0, vec![1, 0], r(2)).unwrap();
    let mut d = MultilinearMap::new(1, -1);
    d.add_coeff(&space, 1, vec![0], r(1)).unwrap();
    // h ∘_2 d: (x, x) ↦ h(x, y) = x with sign (−1)^{|d||x|} = 1
    let c = endo_compose(&space, &h, 2, &d).unwrap();
    assert_eq!(c.coeff(0, &[0, 0]), r(1));
    // h ∘_1 d: (x, x) ↦ h(y, x) = 2x
    let c = endo_compose(&space, &h, 1, &d).unwrap();
    assert_eq!(c.coeff(0, &[0, 0]), r(2));
    let c = endo_compose(&space, &f, 1, &g).unwrap();
    assert!(c.is_zero());
    assert!(endo_compose(&space, &f, 3, &g).is_err());
    // |h| = 1, so ∂h = d∘h + h∘_1 d + h∘_2 d; on (x, x) this is 0 + 2x + x
    let b = boundary(&space, &d, &h).unwrap();
    assert_eq!(b.coeff(0, &[0, 0]), r(3));
}

#[test]
fn associativity_failure_is_reported() {
    let mut m = manifest("truncated-polynomial.json");
    let space = m.structure.space.clone();
    let (s1, se, se2) = (0, 1, 2);
    let mut m2 = m.structure.op(2);
    m2.add_coeff(&space, se2, vec![se, se], r(1)).unwrap();
    m2.add_coeff(&space, se, vec![se, s1], r(2)).unwrap();
    m.structure.ops.insert(2, m2);
    let report = check_structure(&m.structure, 3);
    assert!(!report.all_pass());
    assert!(report.failures().iter().any(|n| n.contains("mu_3")), "{report}");
}

#[test]
fn strictly_associative_and_zero_structures_pass() {
    let mut m = manifest("truncated-polynomial.json");
    m.structure.ops.remove(&0);
    assert!(check_structure(&m.structure, 4).all_pass());
    let zero = AlgebraStructure {
        mode: Mode::Symmetric,
        space: m.structure.space.clone(),
        d_a: MultilinearMap::new(1, -1),
        ops: BTreeMap::new(),
        nilpotency_bound: 0,
    };
    assert!(check_structure(&zero, 4).all_pass());
}

#[test]
fn nilpotency_is_enforced() {
    let mut m = manifest("square-zero.json");
    m.structure.nilpotency_bound = 1;
    let a = m.element("mc_plus").unwrap().clone();
    assert!(curvature_of(&m.structure, &a).is_err());
    assert!(twist_algebra(&m.structure, &a).is_err());
}

#[test]
fn manifests_round_trip() {
    for name in MANIFESTS {
        let m = manifest(name);
        assert_eq!(AlgebraManifest::from_json(&m.to_json()).unwrap(), m);
    }
}

fn element_from(s: &AlgebraStructure, coords: &[(i64, i64)]) -> Element {
    let pairs = (0..s.space.dim())
        .filter(|&i| s.space.degree(i) == 0)
        .zip(coords)
        .map(|(i, (p, q))| (i, Rational::new(*p, *q)));
    Element::from_coords(&s.space, 0, pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twisted_structures_satisfy_relations(
        which in 0..MANIFESTS.len(),
        coords in proptest::collection::vec((-9i64..=9, 1i64..=5), 1..=2),
    ) {
        let m = manifest(MANIFESTS[which]);
        let a = element_from(&m.structure, &coords);
        let tw = twist_algebra(&m.structure, &a).unwrap();
        prop_assert!(check_structure(&tw, 4).all_pass());
        prop_assert_eq!(twist_algebra(&tw, &Element::zero(0)).unwrap(), tw.clone());
        prop_assert_eq!(curvature_of(&tw, &Element::zero(0)).unwrap(), curvature_of(&m.structure, &a).unwrap());
    }
}
