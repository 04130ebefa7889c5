#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use curvop::presets::{ell, mu, ALPHA};
use curvop::signs::Permutation;
use curvop::twisting::{apply_dt, eta_target};
use curvop::{Generator, Mode, OperadElement, Rational, Tree};
use rand::seq::SliceRandom;
use rand::Rng;

fn random_shape<R: Rng>(rng: &mut R, ops: &[Arc<Generator>], alpha: &Arc<Generator>, depth: usize) -> Tree {
    let g = ops.choose(rng).expect("operations").clone();
    let children = (0..g.arity)
        .map(|_| match rng.gen_range(0..4) {
            0 | 1 => Tree::Leaf(0),
            2 => Tree::corolla(alpha),
            _ if depth > 0 => random_shape(rng, ops, alpha, depth - 1),
            _ => Tree::Leaf(0),
        })
        .collect();
    Tree::Node(g, children)
}

fn label(t: &Tree, labels: &[usize], next: &mut usize) -> Tree {
    match t {
        Tree::Leaf(_) => {
            *next += 1;
            Tree::Leaf(labels[*next - 1])
        }
        Tree::Node(g, ch) => Tree::Node(g.clone(), ch.iter().map(|c| label(c, labels, next)).collect()),
    }
}

/// `d_T ρ` for a random nonzero κ_T-free `ρ` with at least one α in every
/// term, so the result is a closed weight-1 element.
pub fn random_closed_weight_one<R: Rng>(rng: &mut R, mode: Mode) -> OperadElement {
    let target = eta_target(mode, 4, 3).unwrap();
    let name = |n| match mode {
        Mode::Nonsymmetric => mu(n),
        Mode::Symmetric => ell(n),
    };
    let ops: Vec<Arc<Generator>> = (1..=3).map(|n| target.generator(&name(n)).unwrap().clone()).collect();
    let alpha = target.generator(ALPHA).unwrap().clone();
    loop {
        let mut by_shape: BTreeMap<(usize, i64), Vec<Tree>> = BTreeMap::new();
        for _ in 0..12 {
            let t = random_shape(rng, &ops, &alpha, 2);
            let arity = t.arity();
            if t.alpha_count() == 0 || arity > 3 {
                continue;
            }
            let mut labels: Vec<usize> = (1..=arity).collect();
            if mode == Mode::Symmetric {
                labels = Permutation::all(arity).choose(rng).unwrap().images();
            }
            let t = label(&t, &labels, &mut 0);
            let degree = t.vertices().iter().map(|g| g.degree).sum();
            by_shape.entry((arity, degree)).or_default().push(t);
        }
        let Some((&(arity, degree), trees)) = by_shape.iter().max_by_key(|(_, v)| v.len()) else { continue };
        let mut rho = OperadElement::zero(mode, arity, degree);
        for t in trees.iter().take(3) {
            let c = Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            rho = rho.add(&OperadElement::from_tree(t, c, mode).unwrap()).unwrap();
        }
        if !rho.is_zero() {
            return apply_dt(&rho).unwrap();
        }
    }
}
