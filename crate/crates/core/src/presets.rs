//! The curved and uncurved A∞ and L∞ operads, `T`, and coproducts with `T`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::dg::Derivation;
use crate::error::{Error, Result};
use crate::manifest::{generator_line, parse_generator_line, Sections};
use crate::operad::{parse_element_as, table_of, Generator, GeneratorTable, Mode, OperadElement, Tree};
use crate::rational::Rational;
use crate::signs::shuffles;

/// A free operad on named generators with a differential.
#[derive(Clone, Debug)]
pub struct OperadPresentation {
    pub mode: Mode,
    pub generators: Vec<Arc<Generator>>,
    pub differential: Derivation,
    /// Distinguished arity-0 generator, if any.
    pub kappa: Option<String>,
    /// Generators of arity above this are absent.
    pub arity_bound: usize,
    /// α-adic truncation of completed coproducts.
    pub alpha_trunc: Option<i64>,
}

impl OperadPresentation {
    pub fn new(mode: Mode, generators: Vec<Arc<Generator>>, arity_bound: usize) -> Result<OperadPresentation> {
        let differential = Derivation::new(mode, generators.iter())?;
        Ok(OperadPresentation {
            mode,
            generators,
            differential,
            kappa: None,
            arity_bound,
            alpha_trunc: None,
        })
    }

    pub fn table(&self) -> GeneratorTable {
        table_of(self.generators.iter())
    }

    pub fn generator(&self, name: &str) -> Result<&Arc<Generator>> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// The corolla on a generator, as an element.
    pub fn element(&self, name: &str) -> Result<OperadElement> {
        Ok(OperadElement::generator(self.generator(name)?, self.mode).with_precision(self.alpha_trunc))
    }

    pub fn parse(&self, text: &str, arity: usize, degree: i64) -> Result<OperadElement> {
        Ok(parse_element_as(text, &self.table(), self.mode, arity, degree)?.with_precision(self.alpha_trunc))
    }

    /// `d` applied to the corolla on `name`.
    pub fn d(&self, name: &str) -> Result<OperadElement> {
        self.differential.apply(&self.element(name)?)
    }

    pub fn to_manifest(&self) -> String {
        let mut s = format!("mode = {}\narity_bound = {}\n", self.mode, self.arity_bound);
        if let Some(k) = &self.kappa {
            s.push_str(&format!("kappa = {k}\n"));
        }
        if let Some(a) = self.alpha_trunc {
            s.push_str(&format!("alpha_trunc = {a}\n"));
        }
        s.push_str("\n[generators]\n");
        for g in &self.generators {
            s.push_str(&generator_line(g));
            s.push('\n');
        }
        s.push_str("\n[d]\n");
        for g in &self.generators {
            s.push_str(&format!("{} = {}\n", g.name, self.differential.values()[&g.name]));
        }
        if !self.differential.truncated().is_empty() {
            s.push_str("\n[truncated]\n");
            for t in self.differential.truncated() {
                s.push_str(&format!("{t}\n"));
            }
        }
        s
    }

    pub fn from_manifest(text: &str) -> Result<OperadPresentation> {
        let sec = Sections::parse(text)?;
        let mode: Mode = sec.header_parsed("mode")?;
        let arity_bound: usize = sec.header_parsed("arity_bound")?;
        let gens = sec
            .section("generators")
            .iter()
            .map(|l| parse_generator_line(l))
            .collect::<Result<Vec<_>>>()?;
        let mut p = OperadPresentation::new(mode, gens, arity_bound)?;
        if sec.header.contains_key("kappa") {
            let k = sec.header("kappa")?.to_string();
            p.generator(&k)?;
            p.kappa = Some(k);
        }
        if sec.header.contains_key("alpha_trunc") {
            p.alpha_trunc = Some(sec.header_parsed("alpha_trunc")?);
        }
        for (name, expr) in sec.assignments("d")? {
            let g = p.generator(&name)?.clone();
            let v = p.parse(&expr, g.arity, g.degree - 1)?;
            p.differential.set(&name, v)?;
        }
        for t in sec.section("truncated") {
            p.generator(t)?;
            p.differential.mark_truncated(t);
        }
        Ok(p)
    }
}

/// The named presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresetName {
    Ainf,
    AinfPlus,
    CAinf,
    Linf,
    LinfPlus,
    CLinf,
    T,
}

impl PresetName {
    pub const ALL: [PresetName; 7] = [
        PresetName::Ainf,
        PresetName::AinfPlus,
        PresetName::CAinf,
        PresetName::Linf,
        PresetName::LinfPlus,
        PresetName::CLinf,
        PresetName::T,
    ];

    pub fn mode(self) -> Mode {
        match self {
            PresetName::Linf | PresetName::LinfPlus | PresetName::CLinf => Mode::Symmetric,
            _ => Mode::Nonsymmetric,
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresetName::Ainf => "Ainf",
            PresetName::AinfPlus => "AinfPlus",
            PresetName::CAinf => "cAinf",
            PresetName::Linf => "Linf",
            PresetName::LinfPlus => "LinfPlus",
            PresetName::CLinf => "cLinf",
            PresetName::T => "T",
        })
    }
}

impl FromStr for PresetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<PresetName> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown preset `{s}`")))
    }
}

pub fn mu(n: usize) -> String {
    format!("mu_{n}")
}

pub fn ell(n: usize) -> String {
    format!("l_{n}")
}

/// Builds a preset with generators up to arity `arity_bound`.
///
/// Differential terms that would need generators above the bound are dropped
/// and the affected generators are marked truncated.
pub fn build_preset(name: PresetName, arity_bound: usize) -> Result<OperadPresentation> {
    match name {
        PresetName::T => build_t(Mode::Nonsymmetric, "alpha", "kappa"),
        PresetName::Ainf => build_ainf(2, arity_bound),
        PresetName::AinfPlus => build_ainf(1, arity_bound),
        PresetName::CAinf => build_ainf(0, arity_bound),
        PresetName::Linf => build_linf(2, arity_bound),
        PresetName::LinfPlus => build_linf(1, arity_bound),
        PresetName::CLinf => build_linf(0, arity_bound),
    }
}

/// `T`: `α` of degree 0 and `κ` of degree −1, both of arity 0, `dα = κ`.
pub fn build_t(mode: Mode, alpha: &str, kappa: &str) -> Result<OperadPresentation> {
    let a = Generator::new(alpha, 0, 0).filtered().shared();
    let k = Generator::new(kappa, 0, -1).shared();
    let mut p = OperadPresentation::new(mode, vec![a.clone(), k.clone()], 0)?;
    p.differential.set(alpha, OperadElement::generator(&k, mode))?;
    p.kappa = Some(kappa.to_string());
    Ok(p)
}

// `min_q` is 0 for the curved operad, 1 for the augmented one, 2 for A∞
// itself (where also the outer operation must be at least binary).
fn build_ainf(min_q: usize, bound: usize) -> Result<OperadPresentation> {
    let mode = Mode::Nonsymmetric;
    let gens: Vec<Arc<Generator>> = (min_q..=bound).map(|n| Generator::new(mu(n), n, -1).shared()).collect();
    let mut p = OperadPresentation::new(mode, gens.clone(), bound)?;
    if min_q == 0 {
        p.kappa = Some(mu(0));
    }
    let corolla = |n: usize| OperadElement::generator(&gens[n - min_q], mode);
    for n in min_q..=bound {
        let mut d = OperadElement::zero(mode, n, -2);
        let mut truncated = false;
        for q in min_q..=n {
            for p_ in 0..=(n - q) {
                let r = n - q - p_;
                let outer = p_ + 1 + r;
                if outer < min_q || (min_q == 2 && p_ + r == 0) {
                    continue;
                }
                if outer > bound {
                    truncated = true;
                    continue;
                }
                let term = corolla(outer).compose(p_ + 1, &corolla(q))?;
                d = d.sub(&term)?;
            }
        }
        p.differential.set(&mu(n), d)?;
        if truncated {
            p.differential.mark_truncated(&mu(n));
        }
    }
    Ok(p)
}

fn build_linf(min_q: usize, bound: usize) -> Result<OperadPresentation> {
    let mode = Mode::Symmetric;
    let gens: Vec<Arc<Generator>> = (min_q..=bound)
        .map(|n| Generator::new(ell(n), n, -1).invariant().shared())
        .collect();
    let mut p = OperadPresentation::new(mode, gens.clone(), bound)?;
    if min_q == 0 {
        p.kappa = Some(ell(0));
    }
    let corolla = |n: usize| OperadElement::generator(&gens[n - min_q], mode);
    for n in min_q..=bound {
        let mut d = OperadElement::zero(mode, n, -2);
        let mut truncated = false;
        for q in min_q..=n {
            let p_ = n - q;
            let outer = p_ + 1;
            if outer < min_q || (min_q == 2 && p_ == 0) {
                continue;
            }
            if outer > bound {
                truncated = true;
                continue;
            }
            let base = corolla(outer).compose(1, &corolla(q))?;
            for sigma in shuffles(q, p_) {
                d = d.sub(&base.act(&sigma)?)?;
            }
        }
        p.differential.set(&ell(n), d)?;
        if truncated {
            p.differential.mark_truncated(&ell(n));
        }
    }
    Ok(p)
}

/// Default names of the `T` generators inside a coproduct.
pub const ALPHA: &str = "alpha";
pub const KAPPA_T: &str = "kappa_T";

/// `P ∨ T` with differential `d_P + d_T`, truncated at `alpha_trunc`
/// occurrences of `α`.
pub fn coproduct_with_t(p: &OperadPresentation, alpha_trunc: i64) -> Result<OperadPresentation> {
    coproduct_with_t_named(p, alpha_trunc, ALPHA, KAPPA_T)
}

pub fn coproduct_with_t_named(
    p: &OperadPresentation,
    alpha_trunc: i64,
    alpha: &str,
    kappa_t: &str,
) -> Result<OperadPresentation> {
    let t = build_t(p.mode, alpha, kappa_t)?;
    let mut generators = p.generators.clone();
    for g in &t.generators {
        if p.generators.iter().any(|h| h.name == g.name) {
            return Err(Error::NameCollision(g.name.clone()));
        }
        generators.push(g.clone());
    }
    let differential = p.differential.union(&t.differential)?;
    Ok(OperadPresentation {
        mode: p.mode,
        generators,
        differential,
        kappa: None,
        arity_bound: p.arity_bound,
        alpha_trunc: Some(alpha_trunc),
    })
}

/// `c · g(children)` for a generator and explicit children.
pub fn node(g: &Arc<Generator>, children: Vec<Tree>) -> Tree {
    Tree::Node(g.clone(), children)
}

/// Helper for tests and docs: the element `c · t` in the presentation.
pub fn term(p: &OperadPresentation, t: &Tree, c: i64) -> Result<OperadElement> {
    OperadElement::from_tree(t, Rational::from(c), p.mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::check_square_zero;

    #[test]
    fn t_preset() {
        let t = build_preset(PresetName::T, 0).unwrap();
        assert_eq!(t.generators.len(), 2);
        assert_eq!(t.d("alpha").unwrap(), t.element("kappa").unwrap());
        assert!(t.d("kappa").unwrap().is_zero());
        assert!(check_square_zero(&t.differential, 0).all_pass());
    }

    #[test]
    fn cainf_mu0_and_mu1() {
        let p = build_preset(PresetName::CAinf, 3).unwrap();
        assert_eq!(p.d("mu_0").unwrap(), p.parse("-1 * mu_1(mu_0)", 0, -2).unwrap());
        assert_eq!(
            p.d("mu_1").unwrap(),
            p.parse("-mu_1(mu_1(1)) - mu_2(mu_0, 1) - mu_2(1, mu_0)", 1, -2).unwrap()
        );
    }

    #[test]
    fn cainf_mu2_truncation() {
        let full = build_preset(PresetName::CAinf, 3).unwrap();
        let cut = build_preset(PresetName::CAinf, 2).unwrap();
        let expected = "-mu_2(mu_1(1), 2) - mu_2(1, mu_1(2)) - mu_1(mu_2(1, 2)) \
                        - mu_3(mu_0, 1, 2) - mu_3(1, mu_0, 2) - mu_3(1, 2, mu_0)";
        assert_eq!(full.d("mu_2").unwrap(), full.parse(expected, 2, -2).unwrap());
        assert!(cut.differential.is_truncated("mu_2"));
        assert!(!full.differential.is_truncated("mu_2"));
        assert_eq!(cut.differential.value("mu_2").unwrap().len(), 3);
        assert_eq!(cut.d("mu_2").unwrap_err(), Error::TruncationExceeded("mu_2".into()));
    }

    #[test]
    fn clinf_l1() {
        let p = build_preset(PresetName::CLinf, 2).unwrap();
        assert_eq!(
            p.d("l_1").unwrap(),
            p.parse("-l_1(l_1(1)) - l_2(1, l_0)", 1, -2).unwrap()
        );
    }

    #[test]
    fn manifest_round_trip() {
        for name in PresetName::ALL {
            let p = build_preset(name, 3).unwrap();
            let text = p.to_manifest();
            let q = OperadPresentation::from_manifest(&text).unwrap();
            assert_eq!(q.to_manifest(), text);
        }
    }

    #[test]
    fn coproduct_name_collision() {
        let t = build_preset(PresetName::T, 0).unwrap();
        let tt = coproduct_with_t_named(&t, 2, "alpha", "kappa").unwrap_err();
        assert_eq!(tt, Error::NameCollision("alpha".into()));
    }
}
