//! Twisting by `T`: the morphisms `η`, the section and counit of `P ∨̂ T`,
//! the right adjoint `R`, the `d_T` solver and the inductive unit.
//!
//! Completed coproducts are truncated: an element with precision `K` is known
//! exactly through α-count `K`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::curv::{construct_initial_morphism, construct_initial_morphism_reversed, CurvObject};
use crate::dg::{Derivation, Report};
use crate::error::{Error, Result};
use crate::morphism::{chain_map_report, OperadMorphism};
use crate::operad::{table_of, Generator, GeneratorTable, Mode, OperadElement, Tree};
use crate::presets::{build_preset, coproduct_with_t, ell, mu, OperadPresentation, PresetName, ALPHA, KAPPA_T};
use crate::rational::Rational;
use crate::signs::{factorial_inverse, Sign};

/// Name of the generator standing for `κ_T + μ₀^α` inside `R(P)`.
pub const KAPPA_HAT: &str = "kappa_hat";

fn alpha_gen() -> Arc<Generator> {
    Generator::new(ALPHA, 0, 0).filtered().shared()
}

fn kappa_t_gen() -> Arc<Generator> {
    Generator::new(KAPPA_T, 0, -1).shared()
}

fn structure_gen(mode: Mode, n: usize) -> Arc<Generator> {
    match mode {
        Mode::Nonsymmetric => Generator::new(mu(n), n, -1).shared(),
        Mode::Symmetric => Generator::new(ell(n), n, -1).invariant().shared(),
    }
}

fn alphas(k: usize) -> Vec<Tree> {
    vec![Tree::corolla(&alpha_gen()); k]
}

/// All vectors of `len` non-negative integers with sum at most `max`.
fn exponent_vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in exponent_vectors(len - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `η(μ_n)`: for `n = 0`, `κ_T + Σ_k μ_k(α,…,α)`; for `n ≥ 1`, the sum of
/// `μ_{n+Σi}(α^{i₁}, 1, α^{i₂}, …, n, α^{i_{n+1}})` with `Σi ≤ precision`.
pub fn eta_cainf(n: usize, precision: usize) -> Result<OperadElement> {
    let mode = Mode::Nonsymmetric;
    let mut out = OperadElement::zero(mode, n, -1);
    if n == 0 {
        out = out.add(&OperadElement::generator(&kappa_t_gen(), mode))?;
    }
    for iv in exponent_vectors(n + 1, precision) {
        let total: usize = iv.iter().sum();
        let mut children = Vec::new();
        for (slot, &i) in iv.iter().enumerate() {
            if slot > 0 {
                children.push(Tree::Leaf(slot));
            }
            children.extend(alphas(i));
        }
        let t = Tree::Node(structure_gen(mode, n + total), children);
        out = out.add(&OperadElement::from_tree(&t, Rational::one(), mode)?)?;
    }
    Ok(out.with_precision(Some(precision as i64)))
}

/// `η(ℓ_n)`: for `n = 0`, `κ_T + Σ_k (1/k!) ℓ_k(α^k)`; for `n ≥ 1`,
/// `Σ_k (1/k!) ℓ_{k+n}(α^k, 1, …, n)`.
pub fn eta_clinf(n: usize, precision: usize) -> Result<OperadElement> {
    let mode = Mode::Symmetric;
    let mut out = OperadElement::zero(mode, n, -1);
    if n == 0 {
        out = out.add(&OperadElement::generator(&kappa_t_gen(), mode))?;
    }
    for k in 0..=precision {
        let mut children = alphas(k);
        children.extend((1..=n).map(Tree::Leaf));
        let t = Tree::Node(structure_gen(mode, n + k), children);
        out = out.add(&OperadElement::from_tree(&t, factorial_inverse(k), mode)?)?;
    }
    Ok(out.with_precision(Some(precision as i64)))
}

/// `η` in either mode.
pub fn eta(mode: Mode, n: usize, precision: usize) -> Result<OperadElement> {
    match mode {
        Mode::Nonsymmetric => eta_cainf(n, precision),
        Mode::Symmetric => eta_clinf(n, precision),
    }
}

/// A morphism into a truncated coproduct `P ∨̂ T`, with the differential of
/// its source.
#[derive(Clone, Debug)]
pub struct TruncatedMorphism {
    pub morphism: OperadMorphism,
    pub source_differential: Derivation,
    pub target: OperadPresentation,
    pub precision: i64,
}

impl TruncatedMorphism {
    pub fn image(&self, name: &str) -> Result<&OperadElement> {
        self.morphism.image(name)
    }

    /// `Φ(name) = Σ_k Φᵏ(name)` split by α-count.
    pub fn pieces(&self, name: &str) -> Result<BTreeMap<usize, OperadElement>> {
        Ok(self.image(name)?.alpha_filtration_split())
    }

    /// `Φᵏ(name)`.
    pub fn piece(&self, name: &str, k: usize) -> Result<OperadElement> {
        let img = self.image(name)?;
        Ok(img.filter(|t| t.alpha_count() == k).with_precision(None))
    }

    pub fn to_manifest(&self) -> String {
        self.morphism.to_manifest()
    }
}

/// The presentation `η` lands in: the curved operad with generators through
/// `arity_bound + precision + 2`, joined with `T`.
pub fn eta_target(mode: Mode, arity_bound: usize, precision: usize) -> Result<OperadPresentation> {
    let preset = match mode {
        Mode::Nonsymmetric => PresetName::CAinf,
        Mode::Symmetric => PresetName::CLinf,
    };
    coproduct_with_t(&build_preset(preset, arity_bound + precision + 2)?, precision as i64)
}

/// `η` as a morphism from the curved A∞/L∞ operad, with images on
/// generators through `arity_bound + 1`.
pub fn eta_morphism(mode: Mode, arity_bound: usize, precision: usize) -> Result<TruncatedMorphism> {
    let preset = match mode {
        Mode::Nonsymmetric => PresetName::CAinf,
        Mode::Symmetric => PresetName::CLinf,
    };
    let source = build_preset(preset, arity_bound + 1)?;
    let target = eta_target(mode, arity_bound, precision)?;
    let mut m = OperadMorphism::zero(mode, &source.table());
    for n in 0..=arity_bound + 1 {
        m.set(&structure_gen(mode, n).name, eta(mode, n, precision)?)?;
    }
    Ok(TruncatedMorphism {
        morphism: m,
        source_differential: source.differential,
        target,
        precision: precision as i64,
    })
}

/// `σ: P → P ∨̂ T`, every generator to itself.
pub fn section_sigma(p: &OperadPresentation, precision: i64) -> Result<TruncatedMorphism> {
    let target = coproduct_with_t(p, precision)?;
    let mut morphism = OperadMorphism::inclusion(p.mode, &p.table());
    for img in morphism.images.values_mut() {
        *img = img.clone().with_precision(Some(precision));
    }
    Ok(TruncatedMorphism {
        morphism,
        source_differential: p.differential.clone(),
        target,
        precision,
    })
}

/// `ε: P ∨̂ T → P`, the identity on `P`, `α ↦ 0`, `κ_T ↦ 0`.
pub fn counit(p: &OperadPresentation, precision: i64) -> Result<OperadMorphism> {
    let sum = coproduct_with_t(p, precision)?;
    let mut e = OperadMorphism::zero(p.mode, &sum.table());
    for g in &p.generators {
        e.set(&g.name, OperadElement::generator(g, p.mode))?;
    }
    Ok(e)
}

/// `d_T` on an element of `P ∨ T`: `α ↦ κ_T`, every other generator to zero.
pub fn apply_dt(x: &OperadElement) -> Result<OperadElement> {
    let mut gens: GeneratorTable = BTreeMap::new();
    for (t, _) in x.terms() {
        for g in t.vertices() {
            gens.insert(g.name.clone(), g);
        }
    }
    let (a, k) = (alpha_gen(), kappa_t_gen());
    gens.insert(a.name.clone(), a);
    gens.insert(k.name.clone(), k.clone());
    let mut d = Derivation::new(x.mode(), gens.values())?;
    d.set(ALPHA, OperadElement::generator(&k, x.mode()))?;
    d.apply(x)
}

// `κ_T ↦ α` on the first `κ_T` of `t`, with the Leibniz sign of a degree +1
// map passing the vertices before it.
fn kappa_to_alpha(t: &Tree) -> Option<(Tree, Sign)> {
    fn go(t: &Tree, prefix: &mut i64, hit: &mut Option<i64>) -> Tree {
        match t {
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Node(g, ch) => {
                if hit.is_none() && g.name == KAPPA_T {
                    *hit = Some(*prefix);
                    return Tree::corolla(&alpha_gen());
                }
                *prefix += g.degree;
                Tree::Node(g.clone(), ch.iter().map(|c| go(c, prefix, hit)).collect())
            }
        }
    }
    let mut hit = None;
    let s = go(t, &mut 0, &mut hit);
    hit.map(|p| (s, Sign::from_parity(p)))
}

/// Solves `d_T ρ = λ` for closed `λ` of `κ_T`-weight at most one.
///
/// A nonzero weight-0 input is rejected: closed weight-0 elements with
/// positive α-count vanish. In weight one `ρ = h(λ)`, where `h` replaces
/// `κ_T` by `α` and divides by the number of `α` and `κ_T` vertices; on a
/// single vertex `μ(α^k, κ_T, −)` this is `((−1)^{|μ|}/(k+1)) μ(α^{k+1}, −)`.
pub fn solve_dt(lambda: &OperadElement) -> Result<OperadElement> {
    let dl = apply_dt(lambda)?;
    if !dl.is_zero() {
        return Err(Error::NotClosed(dl.to_string()));
    }
    let mode = lambda.mode();
    let mut rho = OperadElement::zero(mode, lambda.arity(), lambda.degree() + 1);
    for (w, part) in lambda.kappa_weight_split(KAPPA_T) {
        if part.is_zero() {
            continue;
        }
        match w {
            0 => return Err(Error::NotInImage(format!("closed weight-0 element {part}"))),
            1 => {}
            _ => return Err(Error::NotSolvable(format!("kappa_T weight {w} in {part}"))),
        }
        for (t, c) in part.terms() {
            let n = t.alpha_count() + t.count_named(KAPPA_T);
            let (s, sign) = kappa_to_alpha(t).expect("weight one");
            let coeff = sign.to_rational() * c.clone() / Rational::from(n as i64);
            rho = rho.add(&OperadElement::from_tree(&s, coeff, mode)?)?;
        }
    }
    let rho = rho.with_precision(lambda.precision().map(|p| p + 1));
    let back = apply_dt(&rho)?;
    if back.sub(lambda)?.truncate(lambda.precision().unwrap_or(i64::MAX)).is_zero() {
        Ok(rho)
    } else {
        Err(Error::NotSolvable(format!("{lambda} is not in the image of d_T")))
    }
}

/// `R(P)`: the truncated coproduct `P ∨̂ T` as a curved object whose
/// distinguished generator `κ̂` stands for `κ_T + μ₀^α`.
#[derive(Clone, Debug)]
pub struct RObject {
    pub curv: CurvObject,
    /// `P ∨̂ T` in the `κ_T` basis.
    pub base: OperadPresentation,
    /// `μ₀^α = Σ_k f(μ_k)(α,…,α)` (with `1/k!` in the symmetric case).
    pub mu0_alpha: OperadElement,
    pub precision: i64,
    to_hat: OperadMorphism,
    from_hat: OperadMorphism,
}

impl RObject {
    /// `κ_T + μ₀^α` in the `κ_T` basis.
    pub fn distinguished(&self) -> Result<OperadElement> {
        OperadElement::generator(&kappa_t_gen(), self.base.mode)
            .add(&self.mu0_alpha)
            .map(|e| e.with_precision(Some(self.precision)))
    }

    /// Rewrites `κ_T = κ̂ − μ₀^α`.
    pub fn to_hat_basis(&self, x: &OperadElement) -> Result<OperadElement> {
        self.to_hat.apply(x)
    }

    /// Rewrites `κ̂ = κ_T + μ₀^α`.
    pub fn from_hat_basis(&self, x: &OperadElement) -> Result<OperadElement> {
        self.from_hat.apply(x)
    }
}

/// Builds `R(P)` from the structural morphism `f` out of the curved A∞
/// (or L∞) operad, truncated at α-count `precision`.
pub fn apply_r(p: &OperadPresentation, f: &OperadMorphism, precision: i64) -> Result<RObject> {
    if precision < 0 {
        return Err(Error::NotSolvable(format!("negative precision {precision}")));
    }
    let mode = p.mode;
    let base = coproduct_with_t(p, precision)?;
    let (a, kt) = (alpha_gen(), kappa_t_gen());

    let mut ext = OperadMorphism::zero(mode, &f.source);
    ext.images = f.images.clone();
    for g in [&a, &kt] {
        if ext.source.insert(g.name.clone(), g.clone()).is_some() {
            return Err(Error::NameCollision(g.name.clone()));
        }
        ext.images.insert(g.name.clone(), OperadElement::generator(g, mode));
    }
    let eta0 = eta(mode, 0, precision as usize)?;
    let mu0_alpha = ext.apply(&eta0)?.sub(&OperadElement::generator(&kt, mode))?;

    let hat = Generator::new(KAPPA_HAT, 0, -1).shared();
    if base.generators.iter().any(|g| g.name == KAPPA_HAT) {
        return Err(Error::NameCollision(KAPPA_HAT.into()));
    }
    let mut gens: Vec<Arc<Generator>> = base.generators.iter().filter(|g| g.name != KAPPA_T).cloned().collect();
    gens.push(hat.clone());
    let hat_e = OperadElement::generator(&hat, mode);

    let mut to_hat = OperadMorphism::inclusion(mode, &base.table());
    to_hat.source = base.table();
    to_hat.images.remove(KAPPA_T);
    to_hat.images.insert(KAPPA_T.into(), hat_e.sub(&mu0_alpha)?);
    let mut from_hat = OperadMorphism::inclusion(mode, &table_of(gens.iter()));
    from_hat.images.insert(KAPPA_HAT.into(), OperadElement::generator(&kt, mode).add(&mu0_alpha)?);

    let mut pres = OperadPresentation::new(mode, gens, p.arity_bound)?;
    for g in &p.generators {
        pres.differential.set(&g.name, p.differential.value(&g.name)?.clone())?;
        if p.differential.is_truncated(&g.name) {
            pres.differential.mark_truncated(&g.name);
        }
    }
    pres.differential.set(ALPHA, hat_e.sub(&mu0_alpha)?)?;
    let d_mu0 = base.differential.apply(&mu0_alpha)?;
    pres.differential.set(KAPPA_HAT, to_hat.apply(&d_mu0)?)?;
    pres.kappa = Some(KAPPA_HAT.into());
    pres.alpha_trunc = Some(precision);

    let curv = CurvObject::from_presentation(&pres, KAPPA_HAT)?;
    Ok(RObject {
        curv,
        base,
        mu0_alpha,
        precision,
        to_hat,
        from_hat,
    })
}

/// Builds the unit `Φ: Q → R(P)` extending `f: Q → P`, in the `κ_T` basis,
/// one α-degree at a time: `Φ⁰ = f`, `Φ(κ) = κ_T + μ₀^α` and
/// `Φ^{k+1}(ν) = solve_dt(Φ(d_Q ν)_k − d_P Φᵏ(ν))`.
///
/// Generators whose differential needs images that are not yet known (the
/// top of a truncated presentation) are left without an image.
pub fn construct_unit(q: &CurvObject, f: &OperadMorphism, p: &OperadPresentation, precision: usize) -> Result<TruncatedMorphism> {
    construct_unit_ordered(q, f, p, precision, false)
}

/// The unit at `Q` itself: `P` is the underlying dg operad of `Q` and `f`
/// the identity.
pub fn unit_of(q: &CurvObject, precision: usize) -> Result<TruncatedMorphism> {
    let p = q.presentation()?;
    let id = OperadMorphism::inclusion(q.mode, &p.table());
    construct_unit(q, &id, &p, precision)
}

/// As [`construct_unit`], visiting generators and candidate solutions in
/// the opposite order; the output must not change.
pub fn construct_unit_reversed(
    q: &CurvObject,
    f: &OperadMorphism,
    p: &OperadPresentation,
    precision: usize,
) -> Result<TruncatedMorphism> {
    construct_unit_ordered(q, f, p, precision, true)
}

fn construct_unit_ordered(
    q: &CurvObject,
    f: &OperadMorphism,
    p: &OperadPresentation,
    precision: usize,
    reverse: bool,
) -> Result<TruncatedMorphism> {
    let mode = q.mode;
    let bound = precision;
    let initial = if reverse {
        construct_initial_morphism_reversed(q, bound)?
    } else {
        construct_initial_morphism(q, bound)?
    };
    let structural = initial.morphism.then(f)?;
    let r = apply_r(p, &structural, precision as i64)?;
    let base = &r.base;

    let mut dp = Derivation::new(mode, base.generators.iter())?;
    for g in &p.generators {
        dp.set(&g.name, p.differential.value(&g.name)?.clone())?;
        if p.differential.is_truncated(&g.name) {
            dp.mark_truncated(&g.name);
        }
    }
    let d_q = q.differential()?;
    let kappa_pieces = r.distinguished()?.alpha_filtration_split();
    let kappa_piece = |j: usize| {
        kappa_pieces
            .get(&j)
            .cloned()
            .unwrap_or_else(|| OperadElement::zero(mode, 0, -1))
            .with_precision(None)
    };

    let mut names: Vec<String> = q.q0.iter().map(|g| g.name.clone()).collect();
    if reverse {
        names.reverse();
    }
    let mut levels: Vec<BTreeMap<String, OperadElement>> = vec![BTreeMap::new()];
    for n in &names {
        levels[0].insert(n.clone(), f.image(n)?.clone().with_precision(None));
    }
    for j in 0..precision {
        let mut partial = OperadMorphism::zero(mode, &q.table());
        partial.images.clear();
        let mut k_sum = OperadElement::zero(mode, 0, -1);
        for i in 0..=j {
            k_sum = k_sum.add(&kappa_piece(i))?;
        }
        partial.images.insert(q.kappa.name.clone(), k_sum.with_precision(Some(j as i64)));
        for n in &names {
            if !levels[j].contains_key(n) {
                continue;
            }
            let g = &q.table()[n];
            let mut sum = OperadElement::zero(mode, g.arity, g.degree);
            for level in levels.iter().take(j + 1) {
                sum = sum.add(&level[n])?;
            }
            partial.images.insert(n.clone(), sum.with_precision(Some(j as i64)));
        }
        let mut next = BTreeMap::new();
        for n in &names {
            let Some(phi_j) = levels[j].get(n) else { continue };
            let x = match d_q.value(n) {
                Ok(v) if !d_q.is_truncated(n) => v.clone(),
                _ => continue,
            };
            let image = match partial.apply(&x) {
                Ok(e) => e,
                Err(Error::UnboundGenerator(_)) | Err(Error::TruncationExceeded(_)) => continue,
                Err(e) => return Err(e),
            };
            let dphi = match dp.apply(phi_j) {
                Ok(e) => e,
                Err(Error::TruncationExceeded(_)) => continue,
                Err(e) => return Err(e),
            };
            let lambda = image
                .filter(|t| t.alpha_count() == j)
                .with_precision(None)
                .sub(&dphi.with_precision(None))?;
            let rho = solve_dt(&lambda).map_err(|e| match e {
                Error::NotClosed(s) => Error::NotClosed(format!("{n} at alpha-degree {j}: {s}")),
                Error::NotInImage(s) => Error::NotInImage(format!("{n} at alpha-degree {j}: {s}")),
                e => e,
            })?;
            next.insert(n.clone(), rho);
        }
        levels.push(next);
    }

    let mut morphism = OperadMorphism::zero(mode, &q.table());
    morphism.images.clear();
    morphism
        .images
        .insert(q.kappa.name.clone(), r.distinguished()?.with_precision(Some(precision as i64)));
    let complete: BTreeSet<&String> = names.iter().filter(|n| levels.iter().all(|l| l.contains_key(*n))).collect();
    for n in complete {
        let g = &q.table()[n];
        let mut sum = OperadElement::zero(mode, g.arity, g.degree);
        for level in &levels {
            sum = sum.add(&level[n])?;
        }
        morphism.images.insert(n.clone(), sum.with_precision(Some(precision as i64)));
    }
    Ok(TruncatedMorphism {
        morphism,
        source_differential: d_q,
        target: r.base.clone(),
        precision: precision as i64,
    })
}

/// `d(Φ(g)) − Φ(d g)` on generators of arity at most `arity_bound`. Both
/// sides are known through α-count `precision − 1`.
pub fn verify_chain_map(phi: &TruncatedMorphism, arity_bound: usize) -> Report {
    chain_map_report(&phi.morphism, &phi.source_differential, &phi.target.differential, arity_bound)
}
