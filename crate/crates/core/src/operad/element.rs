use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::generator::{Generator, Mode};
use super::tree::{canonicalize_tagged, Tagged, Tree};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::signs::{Permutation, Sign};

/// A finite rational combination of canonical trees of one arity and degree.
///
/// `precision` is the α-adic truncation order: `Some(p)` means only terms with
/// at most `p` filtered vertices are known (and stored); `None` means exact.
#[derive(Clone)]
pub struct OperadElement {
    mode: Mode,
    arity: usize,
    degree: i64,
    terms: BTreeMap<Tree, Rational>,
    precision: Option<i64>,
}

pub(crate) fn min_precision(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, p) | (p, None) => p,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl OperadElement {
    pub fn zero(mode: Mode, arity: usize, degree: i64) -> OperadElement {
        OperadElement {
            mode,
            arity,
            degree,
            terms: BTreeMap::new(),
            precision: None,
        }
    }

    /// The corolla on a generator.
    pub fn generator(g: &Arc<Generator>, mode: Mode) -> OperadElement {
        let mut e = OperadElement::zero(mode, g.arity, g.degree);
        e.terms.insert(Tree::corolla(g), Rational::one());
        e
    }

    pub fn identity(mode: Mode) -> OperadElement {
        let mut e = OperadElement::zero(mode, 1, 0);
        e.terms.insert(Tree::identity(), Rational::one());
        e
    }

    /// `c · t`, canonicalized. The source tensor order is the preorder of `t`.
    pub fn from_tree(t: &Tree, c: Rational, mode: Mode) -> Result<OperadElement> {
        t.validate(mode).map_err(Error::MalformedTree)?;
        let mut e = OperadElement::zero(mode, t.arity(), t.degree());
        let mut next = 0;
        if let Some((tree, sign)) = canonicalize_tagged(t.tagged_from(&mut next), mode) {
            e.add_term(tree, sign_times(sign, c));
        }
        Ok(e)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tree, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Tree) -> Rational {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    /// Sets the α-precision, dropping terms beyond it.
    pub fn with_precision(mut self, precision: Option<i64>) -> OperadElement {
        self.precision = precision;
        if let Some(p) = precision {
            self.terms.retain(|t, _| (t.alpha_count() as i64) <= p);
        }
        self
    }

    /// Lowers the precision to at most `p`.
    pub fn truncate(self, p: i64) -> OperadElement {
        let p = min_precision(self.precision, Some(p));
        self.with_precision(p)
    }

    /// Adds `c · t` for an already canonical tree.
    pub(crate) fn add_term(&mut self, t: Tree, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(p) = self.precision {
            if t.alpha_count() as i64 > p {
                return;
            }
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds a tagged tree after canonicalization.
    pub(crate) fn add_tagged(&mut self, t: Tagged, c: Rational) {
        if let Some((tree, sign)) = canonicalize_tagged(t, self.mode) {
            self.add_term(tree, sign_times(sign, c));
        }
    }

    fn check_compatible(&self, other: &OperadElement) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &OperadElement) -> Result<OperadElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        if self.is_zero() {
            out.degree = other.degree;
        }
        out = out.with_precision(min_precision(self.precision, other.precision));
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &OperadElement) -> Result<OperadElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OperadElement {
        self.scale(&Rational::from_integer(-1))
    }

    pub fn scale(&self, c: &Rational) -> OperadElement {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
        } else {
            for v in out.terms.values_mut() {
                *v = &*v * c;
            }
        }
        out
    }

    /// In-place `self += c · other`.
    pub fn add_scaled(&mut self, other: &OperadElement, c: &Rational) -> Result<()> {
        self.check_compatible(other)?;
        if self.is_zero() {
            self.degree = other.degree;
        }
        let p = min_precision(self.precision, other.precision);
        if p != self.precision {
            let me = std::mem::replace(self, OperadElement::zero(self.mode, self.arity, self.degree));
            *self = me.with_precision(p);
        }
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v * c);
        }
        Ok(())
    }

    /// Partial composition `self ∘_i y`, grafting into the leaf labelled `i`.
    pub fn compose(&self, i: usize, y: &OperadElement) -> Result<OperadElement> {
        if self.mode != y.mode {
            return Err(Error::ModeMismatch(self.mode, y.mode));
        }
        if i == 0 || i > self.arity {
            return Err(Error::PositionOutOfRange {
                position: i,
                arity: self.arity,
            });
        }
        let m = y.arity;
        let mut out = OperadElement::zero(self.mode, self.arity + m - 1, self.degree + y.degree)
            .with_precision(min_precision(self.precision, y.precision));
        for (tx, cx) in &self.terms {
            let nx = tx.vertex_count();
            for (ty, cy) in &y.terms {
                let mut next = nx;
                let ty_tagged = ty.relabel(&|k| k + i - 1).tagged_from(&mut next);
                let mut next = 0;
                // the grafting leaf becomes 0 so that shifted labels cannot collide with it
                let shifted = tx.relabel(&|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => j,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => j + m - 1,
                });
                let tagged = graft(shifted.tagged_from(&mut next), 0, ty_tagged);
                out.add_tagged(tagged, cx * cy);
            }
        }
        Ok(out)
    }

    /// The symmetric group action: relabels leaf `l` as `σ(l)`.
    pub fn act(&self, sigma: &Permutation) -> Result<OperadElement> {
        if self.mode != Mode::Symmetric {
            return Err(Error::ModeMismatch(Mode::Symmetric, self.mode));
        }
        if sigma.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                found: sigma.len(),
            });
        }
        let mut out = OperadElement::zero(self.mode, self.arity, self.degree).with_precision(self.precision);
        for (t, c) in &self.terms {
            let mut next = 0;
            let tagged = t.relabel(&|l| sigma.apply(l)).tagged_from(&mut next);
            out.add_tagged(tagged, c.clone());
        }
        Ok(out)
    }

    /// Splits by the number of vertices named `kappa`.
    pub fn kappa_weight_split(&self, kappa: &str) -> BTreeMap<usize, OperadElement> {
        self.split_by(|t| t.count_named(kappa))
    }

    /// Splits by the number of filtered vertices.
    pub fn alpha_filtration_split(&self) -> BTreeMap<usize, OperadElement> {
        self.split_by(Tree::alpha_count)
    }

    pub fn split_by(&self, key: impl Fn(&Tree) -> usize) -> BTreeMap<usize, OperadElement> {
        let mut out: BTreeMap<usize, OperadElement> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(key(t))
                .or_insert_with(|| {
                    OperadElement::zero(self.mode, self.arity, self.degree).with_precision(self.precision)
                })
                .add_term(t.clone(), c.clone());
        }
        if out.is_empty() {
            out.insert(0, self.clone());
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Tree) -> bool) -> OperadElement {
        let mut out = self.clone();
        out.terms.retain(|t, _| keep(t));
        out
    }

    /// Names of all generators occurring in the element.
    pub fn generator_names(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        for t in self.terms.keys() {
            t.fold((), &mut |_, g| {
                out.insert(g.name.clone());
            });
        }
        out
    }

    /// Minimum number of filtered vertices over the terms.
    pub fn min_alpha_count(&self) -> Option<usize> {
        self.terms.keys().map(Tree::alpha_count).min()
    }

    /// Equality of the terms up to a common α-precision.
    pub fn agrees_through(&self, other: &OperadElement, p: i64) -> bool {
        self.clone().truncate(p) == other.clone().truncate(p)
    }
}

pub(crate) fn sign_times(s: Sign, c: Rational) -> Rational {
    if s.is_minus() {
        -c
    } else {
        c
    }
}

/// Replaces the leaf labelled `i` of `x` by `y`.
pub(crate) fn graft(x: Tagged, i: usize, y: Tagged) -> Tagged {
    let mut y = Some(y);
    graft_inner(x, i, &mut y)
}

fn graft_inner(x: Tagged, i: usize, y: &mut Option<Tagged>) -> Tagged {
    match x {
        Tagged::Leaf(l) if l == i => y.take().expect("leaf labels are unique"),
        Tagged::Leaf(l) => Tagged::Leaf(l),
        Tagged::Node { gen, tag, children } => Tagged::Node {
            gen,
            tag,
            children: children.into_iter().map(|c| graft_inner(c, i, y)).collect(),
        },
    }
}

impl PartialEq for OperadElement {
    fn eq(&self, other: &OperadElement) -> bool {
        self.mode == other.mode
            && self.arity == other.arity
            && self.terms == other.terms
            && (self.is_zero() || self.degree == other.degree)
    }
}

impl Eq for OperadElement {}

impl fmt::Display for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{c} * {t}")?;
            } else if c.is_negative() {
                write!(f, " - {} * {t}", c.abs())?;
            } else {
                write!(f, " + {c} * {t}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} arity {} degree {}] {}", self.mode, self.arity, self.degree, self)
    }
}
