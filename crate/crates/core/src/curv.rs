//! Objects of the category of curved operads: a quasi-free operad `Q₀ ∨ [κ]`
//! whose differential splits as `d0 + d1` by κ-weight, with `d1 κ = 0`.
//!
//! The curved A∞ (resp. L∞) operad is initial among them; the morphism out
//! of it is built here one arity at a time.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dg::{split_by_weight, CheckStatus, Derivation, Report, WeightSplitDerivation};
use crate::error::{Error, Result};
use crate::linalg::{solve, BasisSlice, RationalMatrix};
use crate::manifest::{generator_line, parse_generator_line, Sections};
use crate::morphism::{chain_map_report, OperadMorphism};
use crate::operad::{compose_all, parse_element_as, table_of, Generator, GeneratorTable, Mode, OperadElement, Tree};
use crate::presets::{build_preset, build_t, ell, mu, OperadPresentation, PresetName};
use crate::signs::{shuffles, Permutation};

/// A presented object `(Q₀ ∨ [κ], d0 + d1, κ, Q₀)`.
#[derive(Clone, Debug)]
pub struct CurvObject {
    pub mode: Mode,
    pub q0: Vec<Arc<Generator>>,
    pub kappa: Arc<Generator>,
    pub d0: Derivation,
    pub d1: Derivation,
    pub arity_bound: usize,
    pub alpha_trunc: Option<i64>,
}

impl CurvObject {
    /// Splits the differential of a presentation with a distinguished `kappa`.
    pub fn from_presentation(p: &OperadPresentation, kappa: &str) -> Result<CurvObject> {
        let k = p.generator(kappa)?.clone();
        let WeightSplitDerivation { d0, d1, .. } = split_by_weight(&p.differential, kappa)?;
        Ok(CurvObject {
            mode: p.mode,
            q0: p.generators.iter().filter(|g| g.name != kappa).cloned().collect(),
            kappa: k,
            d0,
            d1,
            arity_bound: p.arity_bound,
            alpha_trunc: p.alpha_trunc,
        })
    }

    /// The curved A∞ operad with `κ = μ₀`.
    pub fn cainf(arity_bound: usize) -> Result<CurvObject> {
        CurvObject::from_presentation(&build_preset(PresetName::CAinf, arity_bound)?, &mu(0))
    }

    /// The curved L∞ operad with `κ = ℓ₀`.
    pub fn clinf(arity_bound: usize) -> Result<CurvObject> {
        CurvObject::from_presentation(&build_preset(PresetName::CLinf, arity_bound)?, &ell(0))
    }

    /// `T` with `Q₀ = [α]`.
    pub fn t(mode: Mode) -> Result<CurvObject> {
        CurvObject::t_named(mode, "alpha", "kappa")
    }

    /// `T` with its generators renamed.
    pub fn t_named(mode: Mode, alpha: &str, kappa: &str) -> Result<CurvObject> {
        CurvObject::from_presentation(&build_t(mode, alpha, kappa)?, kappa)
    }

    /// The underlying dg operad, with `κ` marked.
    pub fn presentation(&self) -> Result<OperadPresentation> {
        let mut p = OperadPresentation::new(self.mode, self.generators(), self.arity_bound)?;
        p.differential = self.differential()?;
        p.kappa = Some(self.kappa.name.clone());
        p.alpha_trunc = self.alpha_trunc;
        Ok(p)
    }

    pub fn generators(&self) -> Vec<Arc<Generator>> {
        let mut g = self.q0.clone();
        g.push(self.kappa.clone());
        g
    }

    pub fn table(&self) -> GeneratorTable {
        table_of(self.generators().iter())
    }

    pub fn kappa_element(&self) -> OperadElement {
        OperadElement::generator(&self.kappa, self.mode).with_precision(self.alpha_trunc)
    }

    pub fn element(&self, name: &str) -> Result<OperadElement> {
        let g = self.table().get(name).cloned().ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        Ok(OperadElement::generator(&g, self.mode).with_precision(self.alpha_trunc))
    }

    pub fn parse(&self, text: &str, arity: usize, degree: i64) -> Result<OperadElement> {
        Ok(parse_element_as(text, &self.table(), self.mode, arity, degree)?.with_precision(self.alpha_trunc))
    }

    /// `d = d0 + d1`.
    pub fn differential(&self) -> Result<Derivation> {
        WeightSplitDerivation {
            kappa: self.kappa.name.clone(),
            d0: self.d0.clone(),
            d1: self.d1.clone(),
        }
        .reassemble()
    }

    pub fn weight(&self, t: &Tree) -> usize {
        t.count_named(&self.kappa.name)
    }

    pub fn to_manifest(&self) -> String {
        let mut s = format!(
            "mode = {}\narity_bound = {}\nkappa = {}\n",
            self.mode, self.arity_bound, self.kappa.name
        );
        if let Some(a) = self.alpha_trunc {
            s.push_str(&format!("alpha_trunc = {a}\n"));
        }
        s.push_str("\n[generators]\n");
        for g in self.generators() {
            s.push_str(&generator_line(&g));
            s.push('\n');
        }
        for (section, d) in [("d0", &self.d0), ("d1", &self.d1)] {
            s.push_str(&format!("\n[{section}]\n"));
            for g in self.generators() {
                let v = &d.values()[&g.name];
                if !v.is_zero() {
                    s.push_str(&format!("{} = {}\n", g.name, v));
                }
            }
        }
        if !self.d0.truncated().is_empty() {
            s.push_str("\n[truncated]\n");
            for t in self.d0.truncated() {
                s.push_str(&format!("{t}\n"));
            }
        }
        s
    }

    /// Reads a manifest; generators without a `d0`/`d1` line get zero.
    pub fn from_manifest(text: &str) -> Result<CurvObject> {
        let sec = Sections::parse(text)?;
        let mode: Mode = sec.header_parsed("mode")?;
        let arity_bound: usize = sec.header_parsed("arity_bound")?;
        let kappa_name = sec.header("kappa")?.to_string();
        let alpha_trunc = if sec.header.contains_key("alpha_trunc") {
            Some(sec.header_parsed("alpha_trunc")?)
        } else {
            None
        };
        let gens = sec
            .section("generators")
            .iter()
            .map(|l| parse_generator_line(l))
            .collect::<Result<Vec<_>>>()?;
        let kappa = gens
            .iter()
            .find(|g| g.name == kappa_name)
            .cloned()
            .ok_or_else(|| Error::Manifest(format!("kappa `{kappa_name}` is not a generator")))?;
        let table = table_of(gens.iter());
        let mut d0 = Derivation::new(mode, gens.iter())?;
        let mut d1 = d0.clone();
        for (section, d) in [("d0", &mut d0), ("d1", &mut d1)] {
            for (name, expr) in sec.assignments(section)? {
                let g = table.get(&name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let v = parse_element_as(&expr, &table, mode, g.arity, g.degree - 1)?.with_precision(alpha_trunc);
                d.set(&name, v)?;
            }
        }
        for t in sec.section("truncated") {
            d0.mark_truncated(t);
            d1.mark_truncated(t);
        }
        Ok(CurvObject {
            mode,
            q0: gens.into_iter().filter(|g| g.name != kappa_name).collect(),
            kappa,
            d0,
            d1,
            arity_bound,
            alpha_trunc,
        })
    }
}

/// Checks the defining conditions on generators of arity at most `arity_bound`:
/// the presentation is literally `Q₀ ∨ [κ]`, `d0`/`d1` have κ-weight shift
/// 0/1, `d1 κ = 0`, and `d0² = d0d1 + d1d0 = d1² = 0`.
pub fn validate_curv(q: &CurvObject, arity_bound: usize) -> Report {
    let mut r = Report::default();
    let k = &q.kappa;
    let free = if k.arity != 0 || k.degree != -1 {
        CheckStatus::Violation(format!("kappa `{}` must have arity 0 and degree -1", k.name))
    } else if q.q0.iter().any(|g| g.name == k.name) {
        CheckStatus::Violation(format!("kappa `{}` also listed in Q0", k.name))
    } else {
        CheckStatus::Pass
    };
    r.push("free on Q0 and kappa", free);
    r.push_residue("d1 kappa = 0", q.d1.value(&k.name).cloned());

    let mut gens: Vec<Arc<Generator>> = q.generators().into_iter().filter(|g| g.arity <= arity_bound).collect();
    gens.sort_by(|a, b| (a.arity, &a.name).cmp(&(b.arity, &b.name)));
    for g in &gens {
        let w = usize::from(g.name == k.name);
        let mut bad = Vec::new();
        for (label, d, shift) in [("d0", &q.d0, 0), ("d1", &q.d1, 1)] {
            if let Ok(v) = d.value(&g.name) {
                for (t, _) in v.terms() {
                    if q.weight(t) != w + shift {
                        bad.push(format!("{label} term {t} has weight {}", q.weight(t)));
                    }
                }
            }
        }
        let status = if bad.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Violation(bad.join("; "))
        };
        r.push(format!("weights {}", g.name), status);
    }
    for g in &gens {
        r.push_residue(format!("d0^2 {}", g.name), q.d0.square_on(&g.name));
        r.push_residue(format!("d0d1+d1d0 {}", g.name), q.d0.anticommutator_on(&q.d1, &g.name));
        r.push_residue(format!("d1^2 {}", g.name), q.d1.square_on(&g.name));
    }
    r
}

/// Candidate trees `q` with `q ∘_j κ = ±t`, one per κ-vertex of `t` and
/// admissible slot `j`. `only_first` restricts to `j = 1`.
fn strip_kappa(t: &Tree, kappa: &str, mode: Mode, only_first: bool) -> Vec<(Tree, usize)> {
    let n = t.arity();
    let count = t.count_named(kappa);
    let mut out = Vec::new();
    for which in 0..count {
        let mut seen = 0;
        let marked = mark_kappa(t, kappa, which, &mut seen);
        match mode {
            Mode::Nonsymmetric => {
                let leaves = marked.leaves();
                let slot = leaves.iter().position(|&l| l == 0).expect("marker present") + 1;
                if only_first && slot != 1 {
                    continue;
                }
                let mut next = 0;
                out.push((renumber_planar(&marked, &mut next), slot));
            }
            Mode::Symmetric => {
                let slots: Vec<usize> = if only_first { vec![1] } else { (1..=n + 1).collect() };
                for j in slots {
                    let q = marked.relabel(&|l| match l {
                        0 => j,
                        l if l >= j => l + 1,
                        l => l,
                    });
                    out.push((q, j));
                }
            }
        }
    }
    out
}

fn mark_kappa(t: &Tree, kappa: &str, which: usize, seen: &mut usize) -> Tree {
    match t {
        Tree::Leaf(l) => Tree::Leaf(*l),
        Tree::Node(g, ch) => {
            if g.name == kappa {
                let hit = *seen == which;
                *seen += 1;
                if hit {
                    return Tree::Leaf(0);
                }
                return t.clone();
            }
            Tree::Node(g.clone(), ch.iter().map(|c| mark_kappa(c, kappa, which, seen)).collect())
        }
    }
}

fn renumber_planar(t: &Tree, next: &mut usize) -> Tree {
    match t {
        Tree::Leaf(_) => {
            *next += 1;
            Tree::Leaf(*next)
        }
        Tree::Node(g, ch) => Tree::Node(g.clone(), ch.iter().map(|c| renumber_planar(c, next)).collect()),
    }
}

/// Finds `x` in the span of `candidates` with `map(x) = target`.
fn solve_in_span(
    candidates: Vec<Tree>,
    map: impl Fn(&OperadElement) -> Result<OperadElement>,
    target: &OperadElement,
    arity: usize,
    degree: i64,
) -> Result<Option<OperadElement>> {
    let mode = target.mode();
    let mut canon = Vec::new();
    for c in candidates {
        if let Some((t, _)) = crate::operad::canonical_form(&c, mode) {
            canon.push(t);
        }
    }
    let domain = BasisSlice::new(mode, arity, degree, "candidates", canon);
    let mut images = Vec::with_capacity(domain.len());
    let mut rows: Vec<Tree> = target.terms().map(|(t, _)| t.clone()).collect();
    for j in 0..domain.len() {
        let img = map(&domain.element(j))?;
        rows.extend(img.terms().map(|(t, _)| t.clone()));
        images.push(img);
    }
    let codomain = BasisSlice::new(mode, target.arity(), target.degree(), "images", rows);
    let mut m = RationalMatrix::zeros(codomain.len(), domain.len());
    for (j, img) in images.iter().enumerate() {
        for (t, c) in img.terms() {
            m.set(codomain.position(t).expect("row present"), j, c.clone());
        }
    }
    let b = codomain.coordinates(target)?;
    Ok(solve(&m, &b)?.map(|x| domain.from_coordinates(&x).with_precision(target.precision())))
}

/// Solves `[q, κ] = p` for `q`, the constructive half of the acyclicity of
/// `[−, κ]` in positive arity.
///
/// For nonsymmetric `p` with one κ per term, `p = Σ_j p_j ∘_j κ` is read off
/// term by term, the `p_j` are checked to coincide and `p_1` is returned.
/// Otherwise the equation is solved exactly over all trees obtained by
/// removing one κ.
pub fn solve_bracket_kappa(p: &OperadElement, kappa: &Arc<Generator>) -> Result<OperadElement> {
    solve_bracket_kappa_ordered(p, kappa, false)
}

fn solve_bracket_kappa_ordered(p: &OperadElement, kappa: &Arc<Generator>, reverse: bool) -> Result<OperadElement> {
    let mode = p.mode();
    if p.arity() == 0 {
        return Err(Error::NotSolvable("arity 0 elements are not brackets with kappa".into()));
    }
    let k = OperadElement::generator(kappa, mode);
    let closed = crate::dg::bracket(p, &k)?;
    if !closed.is_zero() {
        return Err(Error::NotClosed(closed.to_string()));
    }
    let (n, degree) = (p.arity() + 1, p.degree() - kappa.degree);
    if p.is_zero() {
        return Ok(OperadElement::zero(mode, n, degree).with_precision(p.precision()));
    }
    if p.terms().all(|(t, _)| t.count_named(&kappa.name) == 0) {
        return Err(Error::NotSolvable(format!("closed element of weight 0: {p}")));
    }
    let single = p.terms().all(|(t, _)| t.count_named(&kappa.name) == 1);
    let q = if mode == Mode::Nonsymmetric && single {
        let mut parts: BTreeMap<usize, OperadElement> = BTreeMap::new();
        for (t, c) in p.terms() {
            let (q, slot) = strip_kappa(t, &kappa.name, mode, false).remove(0);
            let qe = OperadElement::from_tree(&q, c.clone(), mode)?;
            // q ∘_slot κ may differ from t by a sign
            let back = qe.compose(slot, &k)?;
            let sign = back.coefficient(t) / c;
            parts
                .entry(slot)
                .or_insert_with(|| OperadElement::zero(mode, n, degree))
                .add_scaled(&qe, &sign)?;
        }
        let all: Vec<OperadElement> = (1..=n)
            .map(|j| parts.remove(&j).unwrap_or_else(|| OperadElement::zero(mode, n, degree)))
            .collect();
        if all.iter().any(|x| *x != all[0]) {
            return Err(Error::NotSolvable(format!("slot components disagree for {p}")));
        }
        let chosen = if reverse { all[n - 1].clone() } else { all[0].clone() };
        chosen.with_precision(p.precision())
    } else {
        let mut cands: Vec<Tree> = p
            .terms()
            .flat_map(|(t, _)| strip_kappa(t, &kappa.name, mode, false))
            .map(|(q, _)| q)
            .collect();
        if reverse {
            cands.reverse();
        }
        solve_in_span(cands, |x| compose_all(x, &k), p, n, degree)?
            .ok_or_else(|| Error::NotSolvable(format!("{p} is not a bracket with kappa")))?
    };
    let check = crate::dg::bracket(&q, &k)?;
    if check != *p {
        return Err(Error::NotSolvable(format!("{p} is not a bracket with kappa")));
    }
    Ok(q)
}

/// Solves `x ∘_1 κ = p` by removing a κ in the first slot.
pub fn solve_graft_kappa(p: &OperadElement, kappa: &Arc<Generator>) -> Result<OperadElement> {
    solve_graft_kappa_ordered(p, kappa, false)
}

fn solve_graft_kappa_ordered(p: &OperadElement, kappa: &Arc<Generator>, reverse: bool) -> Result<OperadElement> {
    let mode = p.mode();
    let (n, degree) = (p.arity() + 1, p.degree() - kappa.degree);
    if p.is_zero() {
        return Ok(OperadElement::zero(mode, n, degree).with_precision(p.precision()));
    }
    let k = OperadElement::generator(kappa, mode);
    let mut cands: Vec<Tree> = p
        .terms()
        .flat_map(|(t, _)| strip_kappa(t, &kappa.name, mode, true))
        .map(|(q, _)| q)
        .collect();
    if reverse {
        cands.reverse();
    }
    let q = solve_in_span(cands, |x| x.compose(1, &k), p, n, degree)?
        .ok_or_else(|| Error::NotSolvable(format!("{p} is not of the form x o_1 kappa")))?;
    Ok(q)
}

/// The morphism out of the curved A∞ or L∞ operad.
#[derive(Clone, Debug)]
pub struct InitialMorphism {
    /// `ν_j`, the image of the arity-`j` generator.
    pub nus: Vec<OperadElement>,
    pub morphism: OperadMorphism,
}

/// Builds the unique morphism from the curved A∞ (nonsymmetric) or curved L∞
/// (symmetric) operad into `q`, through arity `arity_bound`.
pub fn construct_initial_morphism(q: &CurvObject, arity_bound: usize) -> Result<InitialMorphism> {
    construct_initial_morphism_ordered(q, arity_bound, false)
}

/// As [`construct_initial_morphism`], visiting candidate solutions in the
/// opposite order; the output must not change.
pub fn construct_initial_morphism_reversed(q: &CurvObject, arity_bound: usize) -> Result<InitialMorphism> {
    construct_initial_morphism_ordered(q, arity_bound, true)
}

fn construct_initial_morphism_ordered(q: &CurvObject, arity_bound: usize, reverse: bool) -> Result<InitialMorphism> {
    let mode = q.mode;
    let kappa = &q.kappa;
    let nu0 = q.kappa_element();
    let mut nus = vec![nu0.clone()];
    if arity_bound >= 1 {
        let d0k = q.d0.apply(&nu0)?;
        nus.push(solve_graft_kappa_ordered(&d0k.neg(), kappa, reverse)?);
    }
    for k in 1..arity_bound {
        let rhs = q.d1.apply(&nus[k])?.neg();
        let next = match mode {
            Mode::Nonsymmetric => solve_bracket_kappa_ordered(&rhs, kappa, reverse)?,
            Mode::Symmetric => solve_graft_kappa_ordered(&rhs, kappa, reverse)?,
        };
        nus.push(next);
    }
    for j in 1..=arity_bound {
        let lhs = q.d0.apply(&nus[j])?;
        let rhs = augmented_differential(&nus, j, mode)?;
        let residue = lhs.sub(&rhs)?;
        if !residue.is_zero() {
            return Err(Error::ConsistencyFailure(format!(
                "d0 of the arity {j} image differs from the augmented formula by {residue}"
            )));
        }
        if mode == Mode::Symmetric {
            for i in 1..j {
                let s = Permutation::transposition(j, i, i + 1);
                if nus[j].act(&s)? != nus[j] {
                    return Err(Error::ConsistencyFailure(format!("arity {j} image is not invariant")));
                }
            }
        }
    }
    let source = match mode {
        Mode::Nonsymmetric => build_preset(PresetName::CAinf, arity_bound)?,
        Mode::Symmetric => build_preset(PresetName::CLinf, arity_bound)?,
    };
    let mut morphism = OperadMorphism::zero(mode, &source.table());
    for (j, nu) in nus.iter().enumerate() {
        let name = match mode {
            Mode::Nonsymmetric => mu(j),
            Mode::Symmetric => ell(j),
        };
        morphism.set(&name, nu.clone())?;
    }
    Ok(InitialMorphism { nus, morphism })
}

/// `−Σ_{q≥1} ν_{p+1+r} ∘_{p+1} ν_q` (resp. the shuffle sum of
/// `ν_{p+1} ∘_1 ν_q`) on the arity-`j` component.
fn augmented_differential(nus: &[OperadElement], j: usize, mode: Mode) -> Result<OperadElement> {
    let mut out = OperadElement::zero(mode, j, nus[j].degree() - 1);
    for qq in 1..=j {
        match mode {
            Mode::Nonsymmetric => {
                for p in 0..=(j - qq) {
                    let r = j - qq - p;
                    let term = nus[p + 1 + r].compose(p + 1, &nus[qq])?;
                    out = out.sub(&term)?;
                }
            }
            Mode::Symmetric => {
                let p = j - qq;
                let base = nus[p + 1].compose(1, &nus[qq])?;
                for s in shuffles(qq, p) {
                    out = out.sub(&base.act(&s)?)?;
                }
            }
        }
    }
    Ok(out)
}

/// The morphism to `T`: `κ ↦ κ`, an arity-0 degree-0 generator `ν` with
/// `d1 ν = c κ` goes to `c α`, everything else to zero.
pub fn terminal_morphism(q: &CurvObject) -> Result<OperadMorphism> {
    let t = build_t(q.mode, "alpha", "kappa")?;
    let alpha = t.element("alpha")?;
    let tk = t.element("kappa")?;
    let mut phi = OperadMorphism::zero(q.mode, &q.table());
    phi.set(&q.kappa.name, tk)?;
    let kappa_corolla = Tree::corolla(&q.kappa);
    for g in &q.q0 {
        if g.arity == 0 && g.degree == 0 {
            let d1 = q.d1.value(&g.name)?;
            let c = d1.coefficient(&kappa_corolla);
            if d1.len() > usize::from(!c.is_zero()) {
                return Err(Error::ConsistencyFailure(format!(
                    "d1 {} = {d1} is not a multiple of kappa",
                    g.name
                )));
            }
            phi.set(&g.name, alpha.scale(&c))?;
        }
    }
    Ok(phi)
}

/// `d_T ∘ Φ = Φ ∘ d_Q` on generators of arity at most `arity_bound`.
pub fn terminal_chain_report(q: &CurvObject, phi: &OperadMorphism, arity_bound: usize) -> Result<Report> {
    let t = build_t(q.mode, "alpha", "kappa")?;
    Ok(chain_map_report(phi, &q.differential()?, &t.differential, arity_bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::bracket;

    #[test]
    fn quadruples_validate() {
        let c = CurvObject::cainf(6).unwrap();
        let r = validate_curv(&c, 4);
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.skipped(), 0, "{r}");
        let t = CurvObject::t(Mode::Nonsymmetric).unwrap();
        assert!(validate_curv(&t, 0).all_pass());
        let l = CurvObject::clinf(5).unwrap();
        assert!(validate_curv(&l, 3).all_pass());
    }

    #[test]
    fn d1_kappa_must_vanish() {
        let text = "mode = ns\narity_bound = 2\nkappa = k\n[generators]\nk 0 -1\nm 2 0\n[d1]\nk = m(k, k)\n";
        let q = CurvObject::from_manifest(text).unwrap();
        let r = validate_curv(&q, 2);
        assert!(!r.all_pass());
        assert!(r.failures().contains(&"d1 kappa = 0"), "{r}");
    }

    #[test]
    fn bracket_solver_round_trips() {
        let c = CurvObject::cainf(5).unwrap();
        let k = c.kappa.clone();
        let ke = c.kappa_element();
        for text in ["mu_2(1, 2)", "mu_3(mu_2(1, 2), 3, 4)", "mu_2(mu_1(1), 2) + mu_1(mu_2(1, 2))"] {
            let x = crate::operad::parse_element(text, &c.table(), Mode::Nonsymmetric).unwrap();
            let p = bracket(&x, &ke).unwrap();
            assert_eq!(solve_bracket_kappa(&p, &k).unwrap(), x, "{text}");
        }
        let zero = OperadElement::zero(Mode::Nonsymmetric, 1, -2);
        assert!(solve_bracket_kappa(&zero, &k).unwrap().is_zero());
    }

    #[test]
    fn bracket_solver_rejects_non_closed() {
        let c = CurvObject::cainf(4).unwrap();
        let p = c.parse("mu_2(mu_0, 1)", 1, -2).unwrap();
        assert!(matches!(solve_bracket_kappa(&p, &c.kappa), Err(Error::NotClosed(_))));
    }

    #[test]
    fn weight_two_falls_back_to_linear_solve() {
        let c = CurvObject::cainf(5).unwrap();
        let x = c.parse("mu_3(mu_0, 1, 2)", 2, -2).unwrap();
        let p = bracket(&x, &c.kappa_element()).unwrap();
        let q = solve_bracket_kappa(&p, &c.kappa).unwrap();
        assert_eq!(bracket(&q, &c.kappa_element()).unwrap(), p);
    }

    #[test]
    fn initial_morphism_of_cainf_is_identity() {
        let c = CurvObject::cainf(6).unwrap();
        let m = construct_initial_morphism(&c, 4).unwrap();
        for j in 0..=4 {
            assert_eq!(m.nus[j], c.element(&mu(j)).unwrap(), "arity {j}");
        }
    }

    #[test]
    fn initial_morphism_into_t_kills_positive_arity() {
        let t = CurvObject::t(Mode::Nonsymmetric).unwrap();
        let m = construct_initial_morphism(&t, 4).unwrap();
        assert_eq!(m.nus[0], t.kappa_element());
        assert!(m.nus[1..].iter().all(OperadElement::is_zero));
    }

    #[test]
    fn terminal_morphisms() {
        let t = CurvObject::t(Mode::Nonsymmetric).unwrap();
        let phi = terminal_morphism(&t).unwrap();
        assert_eq!(phi.image("alpha").unwrap(), &t.element("alpha").unwrap());
        assert_eq!(phi.image("kappa").unwrap(), &t.element("kappa").unwrap());

        let c = CurvObject::cainf(4).unwrap();
        let phi = terminal_morphism(&c).unwrap();
        assert_eq!(phi.image("mu_0").unwrap().to_string(), "1 * kappa");
        assert!((1..=4).all(|n| phi.image(&mu(n)).unwrap().is_zero()));
        assert!(terminal_chain_report(&c, &phi, 3).unwrap().all_pass());
    }

    #[test]
    fn terminal_recipe_scales_alpha() {
        let text = "mode = ns\narity_bound = 0\nkappa = k\n[generators]\nk 0 -1\nb 0 0\n[d1]\nb = 3 * k\n";
        let q = CurvObject::from_manifest(text).unwrap();
        assert!(validate_curv(&q, 0).all_pass());
        let phi = terminal_morphism(&q).unwrap();
        assert_eq!(phi.image("b").unwrap().to_string(), "3 * alpha");
        assert!(terminal_chain_report(&q, &phi, 0).unwrap().all_pass());
    }
}
