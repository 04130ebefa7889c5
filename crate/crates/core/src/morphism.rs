//! Morphisms of free operads given by images of generators.

use std::collections::BTreeMap;

use crate::dg::{Derivation, Report};
use crate::error::{Error, Result};
use crate::manifest::Sections;
use crate::operad::subst::substitute;
use crate::operad::{min_precision, parse_element_as, GeneratorTable, Mode, OperadElement, Tree};
use crate::rational::Rational;

/// A degree-0 operad morphism out of a free operad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadMorphism {
    pub mode: Mode,
    pub source: GeneratorTable,
    pub images: BTreeMap<String, OperadElement>,
}

impl OperadMorphism {
    /// The morphism sending every source generator to zero.
    pub fn zero(mode: Mode, source: &GeneratorTable) -> OperadMorphism {
        let images = source
            .values()
            .map(|g| (g.name.clone(), OperadElement::zero(mode, g.arity, g.degree)))
            .collect();
        OperadMorphism {
            mode,
            source: source.clone(),
            images,
        }
    }

    /// Each generator to its own corolla.
    pub fn inclusion(mode: Mode, source: &GeneratorTable) -> OperadMorphism {
        let images = source
            .values()
            .map(|g| (g.name.clone(), OperadElement::generator(g, mode)))
            .collect();
        OperadMorphism {
            mode,
            source: source.clone(),
            images,
        }
    }

    pub fn set(&mut self, name: &str, image: OperadElement) -> Result<()> {
        let g = self.source.get(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        if image.mode() != self.mode {
            return Err(Error::ModeMismatch(self.mode, image.mode()));
        }
        if image.arity() != g.arity {
            return Err(Error::ArityMismatch(g.arity, image.arity()));
        }
        if !image.is_zero() && image.degree() != g.degree {
            return Err(Error::DegreeMismatch(g.degree, image.degree()));
        }
        let image = if image.is_zero() {
            OperadElement::zero(self.mode, g.arity, g.degree).with_precision(image.precision())
        } else {
            image
        };
        self.images.insert(name.to_string(), image);
        Ok(())
    }

    pub fn image(&self, name: &str) -> Result<&OperadElement> {
        self.images.get(name).ok_or_else(|| Error::UnboundGenerator(name.into()))
    }

    /// Least α-precision among the images.
    pub fn precision(&self) -> Option<i64> {
        self.images.values().fold(None, |p, e| min_precision(p, e.precision()))
    }

    /// Applies the morphism, substituting every vertex by its image.
    pub fn apply(&self, x: &OperadElement) -> Result<OperadElement> {
        if x.mode() != self.mode {
            return Err(Error::ModeMismatch(self.mode, x.mode()));
        }
        let mut precision = None;
        for n in x.generator_names() {
            precision = min_precision(precision, self.image(&n)?.precision());
        }
        if let Some(px) = x.precision() {
            // unknown terms of x carry more than px filtered vertices
            let m = self
                .source
                .values()
                .filter(|g| g.filtered)
                .filter_map(|g| self.images.get(&g.name).and_then(OperadElement::min_alpha_count))
                .min();
            if let Some(m) = m {
                precision = min_precision(precision, Some((px + 1) * m as i64 - 1));
            }
        }
        let mut out = OperadElement::zero(self.mode, x.arity(), x.degree()).with_precision(precision);
        for (t, c) in x.terms() {
            let verts = t.vertices();
            let images = verts
                .iter()
                .map(|g| self.image(&g.name).map(|e| e.terms().collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            let mut choices: Vec<Option<&Tree>> = vec![None; verts.len()];
            expand(t, &images, 0, c.clone(), 0, precision, &mut choices, &mut out);
        }
        Ok(out)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &OperadMorphism) -> Result<OperadMorphism> {
        let mut images = BTreeMap::new();
        for (n, e) in &self.images {
            images.insert(n.clone(), other.apply(e)?);
        }
        Ok(OperadMorphism {
            mode: self.mode,
            source: self.source.clone(),
            images,
        })
    }

    /// Truncates every image to α-precision `p`.
    pub fn truncate(&self, p: i64) -> OperadMorphism {
        let mut out = self.clone();
        for e in out.images.values_mut() {
            *e = e.clone().truncate(p);
        }
        out
    }

    /// `precision = N` header followed by one `gen = expression` line per
    /// assigned generator, ordered by arity then name.
    pub fn to_manifest(&self) -> String {
        let mut s = String::new();
        if let Some(p) = self.precision() {
            s.push_str(&format!("precision = {p}\n"));
        }
        s.push_str(&format!("mode = {}\n\n[images]\n", self.mode));
        let mut gens: Vec<_> = self.source.values().collect();
        gens.sort_by(|a, b| (a.arity, &a.name).cmp(&(b.arity, &b.name)));
        for g in gens {
            if let Some(img) = self.images.get(&g.name) {
                s.push_str(&format!("{} = {}\n", g.name, img));
            }
        }
        s
    }

    pub fn from_manifest(text: &str, source: &GeneratorTable, target: &GeneratorTable) -> Result<OperadMorphism> {
        let sec = Sections::parse(text)?;
        let mode: Mode = sec.header_parsed("mode")?;
        let precision: Option<i64> = if sec.header.contains_key("precision") {
            Some(sec.header_parsed("precision")?)
        } else {
            None
        };
        let mut m = OperadMorphism::zero(mode, source);
        for (name, expr) in sec.assignments("images")? {
            let g = source.get(&name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let e = parse_element_as(&expr, target, mode, g.arity, g.degree)?.with_precision(precision);
            m.set(&name, e)?;
        }
        Ok(m)
    }
}

#[allow(clippy::too_many_arguments)]
fn expand<'a>(
    t: &Tree,
    images: &[Vec<(&'a Tree, &'a Rational)>],
    k: usize,
    coeff: Rational,
    alpha: usize,
    precision: Option<i64>,
    choices: &mut Vec<Option<&'a Tree>>,
    out: &mut OperadElement,
) {
    if k == images.len() {
        out.add_tagged(substitute(t, choices), coeff);
        return;
    }
    for (rep, c) in &images[k] {
        let a = alpha + rep.alpha_count();
        if precision.is_some_and(|p| a as i64 > p) {
            continue;
        }
        choices[k] = Some(rep);
        expand(t, images, k + 1, &coeff * *c, a, precision, choices, out);
    }
    choices[k] = None;
}

/// `d_target(Φ(g)) − Φ(d_source(g))` for every source generator of arity at
/// most `arity_bound`.
pub fn chain_map_report(
    phi: &OperadMorphism,
    d_source: &Derivation,
    d_target: &Derivation,
    arity_bound: usize,
) -> Report {
    let mut gens: Vec<_> = phi.source.values().filter(|g| g.arity <= arity_bound).collect();
    gens.sort_by(|a, b| (a.arity, &a.name).cmp(&(b.arity, &b.name)));
    let mut report = Report::default();
    for g in gens {
        let residue = (|| {
            let x = OperadElement::generator(g, phi.mode);
            let left = d_target.apply(phi.image(&g.name)?)?;
            let right = phi.apply(&d_source.apply(&x)?)?;
            left.sub(&right)
        })();
        report.push_residue(g.name.clone(), residue);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{build_preset, PresetName};

    #[test]
    fn quotient_by_mu0_gives_augmented_differential() {
        let c = build_preset(PresetName::CAinf, 5).unwrap();
        let plus = build_preset(PresetName::AinfPlus, 5).unwrap();
        let mut q = OperadMorphism::inclusion(Mode::Nonsymmetric, &c.table());
        q.set("mu_0", OperadElement::zero(Mode::Nonsymmetric, 0, -1)).unwrap();
        for n in 1..=4 {
            let name = format!("mu_{n}");
            let image = q.apply(c.differential.value(&name).unwrap()).unwrap();
            let expected = plus.differential.value(&name).unwrap();
            assert_eq!(image.to_string(), expected.to_string(), "{name}");
        }
    }

    #[test]
    fn manifest_round_trip() {
        let c = build_preset(PresetName::CAinf, 3).unwrap();
        let id = OperadMorphism::inclusion(Mode::Nonsymmetric, &c.table());
        let text = id.to_manifest();
        let back = OperadMorphism::from_manifest(&text, &c.table(), &c.table()).unwrap();
        assert_eq!(back, id);
    }
}
