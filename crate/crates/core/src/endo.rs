//! Curved A∞ and L∞ algebras on finite-dimensional graded rational spaces,
//! realized through the endomorphism operad, and their twists.
//!
//! All operations have degree −1 and Maurer–Cartan elements degree 0. The
//! composite `f ∘_i g` carries the sign `(−1)^{|g|(|x₁|+⋯+|x_{i−1}|)}` of `g`
//! passing the first `i − 1` inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dg::{CheckStatus, Report};
use crate::error::{Error, Result};
use crate::operad::{Generator, Mode, OperadElement, Tree};
use crate::presets::{build_preset, ell, mu, PresetName, ALPHA, KAPPA_T};
use crate::rational::Rational;
use crate::signs::{factorial_inverse, Permutation};
use crate::twisting::eta;

/// A graded vector space with a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    basis: Vec<(String, i64)>,
    index: BTreeMap<String, usize>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(String, i64)>) -> Result<GradedSpace> {
        let mut index = BTreeMap::new();
        for (i, (n, _)) in basis.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::NameCollision(n.clone()));
            }
        }
        Ok(GradedSpace { basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Manifest(format!("unknown basis vector `{name}`")))
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }
}

/// A homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: i64,
    coords: BTreeMap<usize, Rational>,
}

impl Element {
    pub fn zero(degree: i64) -> Element {
        Element {
            degree,
            coords: BTreeMap::new(),
        }
    }

    /// Builds an element from `(basis index, coefficient)` pairs; all
    /// nonzero coordinates must share one degree.
    pub fn from_coords(space: &GradedSpace, degree: i64, coords: impl IntoIterator<Item = (usize, Rational)>) -> Result<Element> {
        let mut e = Element::zero(degree);
        for (i, c) in coords {
            if c.is_zero() {
                continue;
            }
            if space.degree(i) != degree {
                return Err(Error::DegreeMismatch(degree, space.degree(i)));
            }
            *e.coords.entry(i).or_default() += c;
        }
        e.coords.retain(|_, c| !c.is_zero());
        Ok(e)
    }

    pub fn basis_vector(space: &GradedSpace, i: usize) -> Element {
        let mut coords = BTreeMap::new();
        coords.insert(i, Rational::one());
        Element {
            degree: space.degree(i),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> Rational {
        self.coords.get(&i).cloned().unwrap_or_default()
    }

    pub fn coords(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().map(|(i, c)| (*i, c))
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (i, c) in &other.coords {
            *out.coords.entry(*i).or_default() += c.clone();
        }
        out.coords.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut out = self.clone();
        for v in out.coords.values_mut() {
            *v = &*v * c;
        }
        out.coords.retain(|_, c| !c.is_zero());
        out
    }

    /// `name*coef` terms, e.g. `2 * x - 1/2 * y`.
    pub fn display(&self, space: &GradedSpace) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in self.coords.iter().enumerate() {
            if k == 0 {
                s.push_str(&format!("{c} * {}", space.name(*i)));
            } else if c.is_negative() {
                s.push_str(&format!(" - {} * {}", c.abs(), space.name(*i)));
            } else {
                s.push_str(&format!(" + {c} * {}", space.name(*i)));
            }
        }
        s
    }

    /// The arity-0 map with value `self`.
    pub fn as_constant(&self) -> MultilinearMap {
        let mut m = MultilinearMap::new(0, self.degree);
        for (i, c) in &self.coords {
            m.coeffs.insert((*i, vec![]), c.clone());
        }
        m
    }
}

/// A map `A^{⊗n} → A` given by coefficients on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    pub arity: usize,
    pub degree: i64,
    coeffs: BTreeMap<(usize, Vec<usize>), Rational>,
}

impl MultilinearMap {
    pub fn new(arity: usize, degree: i64) -> MultilinearMap {
        MultilinearMap {
            arity,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedSpace) -> MultilinearMap {
        let mut m = MultilinearMap::new(1, 0);
        for i in 0..space.dim() {
            m.coeffs.insert((i, vec![i]), Rational::one());
        }
        m
    }

    /// Adds `c` to the coefficient of `out` on `inputs`, checking degrees.
    pub fn add_coeff(&mut self, space: &GradedSpace, out: usize, inputs: Vec<usize>, c: Rational) -> Result<()> {
        if inputs.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, inputs.len()));
        }
        let expected = self.degree + inputs.iter().map(|&i| space.degree(i)).sum::<i64>();
        if !c.is_zero() && space.degree(out) != expected {
            return Err(Error::DegreeMismatch(expected, space.degree(out)));
        }
        let key = (out, inputs);
        let v = self.coeffs.entry(key.clone()).or_default();
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn coeff(&self, out: usize, inputs: &[usize]) -> Rational {
        self.coeffs.get(&(out, inputs.to_vec())).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(usize, Vec<usize>), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn accumulate(&mut self, key: (usize, Vec<usize>), c: Rational) {
        let v = self.coeffs.entry(key.clone()).or_default();
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        } else if !other.is_zero() && other.degree != self.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        for (k, c) in &other.coeffs {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultilinearMap {
        let mut out = MultilinearMap::new(self.arity, self.degree);
        for (k, v) in &self.coeffs {
            out.accumulate(k.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        self.add(&other.scale(&Rational::from(-1)))
    }

    /// `f(x₁, …, x_n)` with no sign: inputs are fed in order.
    pub fn evaluate(&self, inputs: &[Element]) -> Result<Element> {
        if inputs.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, inputs.len()));
        }
        let degree = self.degree + inputs.iter().map(|e| e.degree).sum::<i64>();
        let mut out = Element::zero(degree);
        for ((o, ins), c) in &self.coeffs {
            let mut v = c.clone();
            for (e, i) in inputs.iter().zip(ins) {
                v = &v * &e.coord(*i);
                if v.is_zero() {
                    break;
                }
            }
            if !v.is_zero() {
                *out.coords.entry(*o).or_default() += v;
            }
        }
        out.coords.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `self ∘_i g`.
    pub fn compose(&self, space: &GradedSpace, i: usize, g: &MultilinearMap) -> Result<MultilinearMap> {
        if i == 0 || i > self.arity {
            return Err(Error::PositionOutOfRange {
                position: i,
                arity: self.arity,
            });
        }
        let mut out = MultilinearMap::new(self.arity + g.arity - 1, self.degree + g.degree);
        for ((o, ins), c) in &self.coeffs {
            let before: i64 = ins[..i - 1].iter().map(|&j| space.degree(j)).sum();
            let sign = if (g.degree * before).rem_euclid(2) == 1 { -1 } else { 1 };
            for ((go, gins), gc) in &g.coeffs {
                if *go != ins[i - 1] {
                    continue;
                }
                let mut inputs = ins[..i - 1].to_vec();
                inputs.extend(gins.iter().copied());
                inputs.extend(ins[i..].iter().copied());
                out.accumulate((*o, inputs), c * gc * Rational::from(sign));
            }
        }
        Ok(out)
    }

    /// Input `p` of `self` becomes input `labels[p]` (1-based) of the result,
    /// with the Koszul sign of reordering the inputs.
    pub fn relabel_inputs(&self, space: &GradedSpace, labels: &[usize]) -> Result<MultilinearMap> {
        if labels.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                found: labels.len(),
            });
        }
        let mut out = MultilinearMap::new(self.arity, self.degree);
        for ((o, ins), c) in &self.coeffs {
            let mut odd = 0i64;
            for p in 0..ins.len() {
                for q in p + 1..ins.len() {
                    if labels[p] > labels[q] {
                        odd += space.degree(ins[p]) * space.degree(ins[q]);
                    }
                }
            }
            let mut new_ins = vec![0; ins.len()];
            for (p, &i) in ins.iter().enumerate() {
                new_ins[labels[p] - 1] = i;
            }
            let c = if odd.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            out.accumulate((*o, new_ins), c);
        }
        Ok(out)
    }

    /// `f^σ(x₁, …, x_n) = ±f(x_{σ(1)}, …, x_{σ(n)})`.
    pub fn act(&self, space: &GradedSpace, sigma: &Permutation) -> Result<MultilinearMap> {
        self.relabel_inputs(space, &sigma.inverse().images())
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|((o, ins), c)| {
                let args: Vec<&str> = ins.iter().map(|&i| space.name(i)).collect();
                format!("({}) -> {c} * {}", args.join(", "), space.name(*o))
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// `∂f = d_A ∘ f − (−1)^{|f|} Σ_i f ∘_i d_A`.
pub fn boundary(space: &GradedSpace, d_a: &MultilinearMap, f: &MultilinearMap) -> Result<MultilinearMap> {
    let mut out = d_a.compose(space, 1, f)?;
    let sign = Rational::from(if f.degree.rem_euclid(2) == 1 { 1 } else { -1 });
    for i in 1..=f.arity {
        out = out.add(&f.compose(space, i, d_a)?.scale(&sign))?;
    }
    Ok(out)
}

/// `f ∘_i g` in the endomorphism operad.
pub fn endo_compose(space: &GradedSpace, f: &MultilinearMap, i: usize, g: &MultilinearMap) -> Result<MultilinearMap> {
    f.compose(space, i, g)
}

/// A curved A∞ (nonsymmetric) or L∞ (symmetric) structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraStructure {
    pub mode: Mode,
    pub space: GradedSpace,
    pub d_a: MultilinearMap,
    /// `μ_n` (or `ℓ_n`) by arity; missing arities are zero.
    pub ops: BTreeMap<usize, MultilinearMap>,
    /// Operations above this arity vanish.
    pub nilpotency_bound: usize,
}

impl AlgebraStructure {
    pub fn op(&self, n: usize) -> MultilinearMap {
        self.ops.get(&n).cloned().unwrap_or_else(|| MultilinearMap::new(n, -1))
    }

    fn op_name(&self, n: usize) -> String {
        match self.mode {
            Mode::Nonsymmetric => mu(n),
            Mode::Symmetric => ell(n),
        }
    }

    /// Fails if a nonzero operation lies above the nilpotency bound.
    pub fn check_nilpotency(&self) -> Result<()> {
        for (n, m) in &self.ops {
            if *n > self.nilpotency_bound && !m.is_zero() {
                return Err(Error::NilpotencyExceeded {
                    bound: self.nilpotency_bound,
                    detail: format!("operation of arity {n} is nonzero"),
                });
            }
        }
        Ok(())
    }

    fn bind(&self, g: &Generator, extra: &BTreeMap<String, MultilinearMap>) -> Result<MultilinearMap> {
        if let Some(m) = extra.get(&g.name) {
            return Ok(m.clone());
        }
        if g.name == self.op_name(g.arity) {
            return Ok(self.op(g.arity));
        }
        Err(Error::UnboundGenerator(g.name.clone()))
    }

    fn realize_tree(&self, t: &Tree, extra: &BTreeMap<String, MultilinearMap>) -> Result<(MultilinearMap, Vec<usize>)> {
        match t {
            Tree::Leaf(l) => Ok((MultilinearMap::identity(&self.space), vec![*l])),
            Tree::Node(g, children) => {
                let mut m = self.bind(g, extra)?;
                let mut labels = Vec::new();
                let mut slot = 1;
                for c in children {
                    let (cm, cl) = self.realize_tree(c, extra)?;
                    m = m.compose(&self.space, slot, &cm)?;
                    slot += cm.arity;
                    labels.extend(cl);
                }
                Ok((m, labels))
            }
        }
    }

    /// The image of `x` under the operad morphism to the endomorphism
    /// operad, with extra generators bound to the given maps.
    pub fn realize_with(&self, x: &OperadElement, extra: &BTreeMap<String, MultilinearMap>) -> Result<MultilinearMap> {
        let mut out = MultilinearMap::new(x.arity(), x.degree());
        for (t, c) in x.terms() {
            let (m, labels) = self.realize_tree(t, extra)?;
            let m = m.relabel_inputs(&self.space, &labels)?;
            out = out.add(&m.scale(c))?;
        }
        Ok(out)
    }

    pub fn realize(&self, x: &OperadElement) -> Result<MultilinearMap> {
        self.realize_with(x, &BTreeMap::new())
    }
}

/// Checks `ρ(d μ_n) = ∂ρ(μ_n)` for `n ≤ arity_bound`, along with `d_A² = 0`
/// and, in symmetric mode, graded symmetry of the operations.
pub fn check_structure(s: &AlgebraStructure, arity_bound: usize) -> Report {
    let mut r = Report::default();
    let space = &s.space;
    let status_of = |res: Result<MultilinearMap>| match res {
        Ok(m) if m.is_zero() => CheckStatus::Pass,
        Ok(m) => CheckStatus::Violation(format!("residue {}", m.display(space))),
        Err(e) => CheckStatus::Violation(e.to_string()),
    };
    r.push("d_A^2", status_of(s.d_a.compose(space, 1, &s.d_a)));
    r.push(
        "nilpotency",
        match s.check_nilpotency() {
            Ok(()) => CheckStatus::Pass,
            Err(e) => CheckStatus::Violation(e.to_string()),
        },
    );
    let preset = match s.mode {
        Mode::Nonsymmetric => PresetName::CAinf,
        Mode::Symmetric => PresetName::CLinf,
    };
    let p = match build_preset(preset, arity_bound + 1) {
        Ok(p) => p,
        Err(e) => {
            r.push("preset", CheckStatus::Violation(e.to_string()));
            return r;
        }
    };
    if s.mode == Mode::Symmetric {
        for n in 2..=arity_bound {
            let residue = (|| {
                let f = s.op(n);
                let mut acc = MultilinearMap::new(n, -1);
                for i in 1..n {
                    let t = Permutation::transposition(n, i, i + 1);
                    acc = acc.add(&f.act(space, &t)?.sub(&f)?)?;
                }
                Ok(acc)
            })();
            r.push(format!("symmetry {}", s.op_name(n)), status_of(residue));
        }
    }
    for n in 0..=arity_bound {
        let name = s.op_name(n);
        let residue = (|| {
            let left = s.realize(p.differential.value(&name)?)?;
            let right = boundary(space, &s.d_a, &s.op(n))?;
            left.sub(&right)
        })();
        r.push(format!("relation {name}"), status_of(residue));
    }
    r
}

/// `d_A a + Σ_k μ_k(a, …, a)`, with `1/k!` in the symmetric case.
pub fn curvature_of(s: &AlgebraStructure, a: &Element) -> Result<Element> {
    if a.degree != 0 && !a.is_zero() {
        return Err(Error::DegreeMismatch(0, a.degree));
    }
    s.check_nilpotency()?;
    let mut out = s.d_a.evaluate(std::slice::from_ref(a))?;
    for k in 0..=s.nilpotency_bound {
        let v = s.op(k).evaluate(&vec![a.clone(); k])?;
        let w = match s.mode {
            Mode::Nonsymmetric => Rational::one(),
            Mode::Symmetric => factorial_inverse(k),
        };
        out = out.add(&v.scale(&w));
    }
    out.degree = -1;
    Ok(out)
}

/// `A^a`: the operations `μ_n^a = ρ(η(μ_n))` with `α ↦ a`, `κ_T ↦ d_A a`.
pub fn twist_algebra(s: &AlgebraStructure, a: &Element) -> Result<AlgebraStructure> {
    if a.degree != 0 && !a.is_zero() {
        return Err(Error::DegreeMismatch(0, a.degree));
    }
    s.check_nilpotency()?;
    let mut a0 = a.clone();
    a0.degree = 0;
    let mut da = s.d_a.evaluate(std::slice::from_ref(&a0))?;
    da.degree = -1;
    let mut extra = BTreeMap::new();
    extra.insert(ALPHA.to_string(), a0.as_constant());
    extra.insert(KAPPA_T.to_string(), da.as_constant());
    let bound = s.nilpotency_bound;
    let mut ops = BTreeMap::new();
    for n in 0..=bound {
        let e = eta(s.mode, n, bound - n)?;
        let e = e.filter(|t| t.vertices().iter().all(|g| g.arity <= bound));
        let m = s.realize_with(&e, &extra)?;
        if !m.is_zero() {
            ops.insert(n, m);
        }
    }
    Ok(AlgebraStructure {
        mode: s.mode,
        space: s.space.clone(),
        d_a: s.d_a.clone(),
        ops,
        nilpotency_bound: bound,
    })
}

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    name: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    out: String,
    #[serde(rename = "in")]
    inputs: Vec<String>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    mode: String,
    basis: Vec<BasisEntry>,
    #[serde(default)]
    differential: Vec<CoeffEntry>,
    #[serde(default)]
    ops: BTreeMap<usize, Vec<CoeffEntry>>,
    nilpotency_bound: usize,
    #[serde(default)]
    elements: BTreeMap<String, BTreeMap<String, String>>,
}

/// An algebra manifest: a structure and named elements, stored as JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraManifest {
    pub structure: AlgebraStructure,
    pub elements: BTreeMap<String, Element>,
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|_| Error::Manifest(format!("bad coefficient `{s}`")))
}

fn map_from_entries(space: &GradedSpace, arity: usize, degree: i64, entries: &[CoeffEntry]) -> Result<MultilinearMap> {
    let mut m = MultilinearMap::new(arity, degree);
    for e in entries {
        let out = space.position(&e.out)?;
        let ins = e.inputs.iter().map(|n| space.position(n)).collect::<Result<Vec<_>>>()?;
        m.add_coeff(space, out, ins, parse_rational(&e.coeff)?)?;
    }
    Ok(m)
}

fn entries_of(space: &GradedSpace, m: &MultilinearMap) -> Vec<CoeffEntry> {
    m.coeffs()
        .map(|((o, ins), c)| CoeffEntry {
            out: space.name(*o).to_string(),
            inputs: ins.iter().map(|&i| space.name(i).to_string()).collect(),
            coeff: c.to_string(),
        })
        .collect()
}

impl AlgebraManifest {
    pub fn from_json(text: &str) -> Result<AlgebraManifest> {
        let j: AlgebraJson = serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        let mode: Mode = j.mode.parse()?;
        let space = GradedSpace::new(j.basis.into_iter().map(|b| (b.name, b.degree)).collect())?;
        let d_a = map_from_entries(&space, 1, -1, &j.differential)?;
        let mut ops = BTreeMap::new();
        for (n, entries) in &j.ops {
            let m = map_from_entries(&space, *n, -1, entries)?;
            if !m.is_zero() {
                ops.insert(*n, m);
            }
        }
        let structure = AlgebraStructure {
            mode,
            space,
            d_a,
            ops,
            nilpotency_bound: j.nilpotency_bound,
        };
        structure.check_nilpotency()?;
        let mut elements = BTreeMap::new();
        for (name, coords) in j.elements {
            let mut pairs = Vec::new();
            let mut degree = None;
            for (b, c) in coords {
                let i = structure.space.position(&b)?;
                degree.get_or_insert(structure.space.degree(i));
                pairs.push((i, parse_rational(&c)?));
            }
            let e = Element::from_coords(&structure.space, degree.unwrap_or(0), pairs)
                .map_err(|e| Error::Manifest(format!("element `{name}`: {e}")))?;
            elements.insert(name, e);
        }
        Ok(AlgebraManifest { structure, elements })
    }

    /// Pretty JSON with coefficients in a canonical order.
    pub fn to_json(&self) -> String {
        let s = &self.structure;
        let j = AlgebraJson {
            mode: s.mode.to_string(),
            basis: s
                .space
                .basis()
                .iter()
                .map(|(n, d)| BasisEntry {
                    name: n.clone(),
                    degree: *d,
                })
                .collect(),
            differential: entries_of(&s.space, &s.d_a),
            ops: s
                .ops
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(n, m)| (*n, entries_of(&s.space, m)))
                .collect(),
            nilpotency_bound: s.nilpotency_bound,
            elements: self
                .elements
                .iter()
                .map(|(n, e)| {
                    let coords = e.coords().map(|(i, c)| (s.space.name(i).to_string(), c.to_string())).collect();
                    (n.clone(), coords)
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&j).expect("manifest serializes");
        out.push('\n');
        out
    }

    pub fn element(&self, name: &str) -> Result<&Element> {
        self.elements
            .get(name)
            .ok_or_else(|| Error::Manifest(format!("unknown element `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::parse_element;

    fn xy() -> GradedSpace {
        GradedSpace::new(vec![("x".into(), 0), ("y".into(), -1)]).unwrap()
    }

    fn square_zero() -> AlgebraStructure {
        let space = xy();
        let mut d_a = MultilinearMap::new(1, -1);
        d_a.add_coeff(&space, 1, vec![0], Rational::one()).unwrap();
        let mut m0 = MultilinearMap::new(0, -1);
        m0.add_coeff(&space, 1, vec![], Rational::from(-6)).unwrap();
        let mut m2 = MultilinearMap::new(2, -1);
        m2.add_coeff(&space, 1, vec![0, 0], Rational::one()).unwrap();
        AlgebraStructure {
            mode: Mode::Nonsymmetric,
            space,
            d_a,
            ops: [(0, m0), (2, m2)].into_iter().collect(),
            nilpotency_bound: 2,
        }
    }

    #[test]
    fn degree_homogeneity_is_enforced() {
        let space = xy();
        let mut m = MultilinearMap::new(2, -1);
        assert!(m.add_coeff(&space, 0, vec![0, 0], Rational::one()).is_err());
    }

    #[test]
    fn compose_with_identity() {
        let s = square_zero();
        let id = MultilinearMap::identity(&s.space);
        let m2 = s.op(2);
        assert_eq!(m2.compose(&s.space, 1, &id).unwrap(), m2);
        assert_eq!(id.compose(&s.space, 1, &m2).unwrap(), m2);
    }

    #[test]
    fn composite_sign_on_two_dimensional_space() {
        // g passes x₁ = y (odd) in slot 2
        let space = xy();
        let mut f = MultilinearMap::new(2, 1);
        f.add_coeff(&space, 1, vec![1, 1], Rational::one()).unwrap();
        let mut g = MultilinearMap::new(1, -1);
        g.add_coeff(&space, 1, vec![0], Rational::one()).unwrap();
        let c = f.compose(&space, 2, &g).unwrap();
        assert_eq!(c.coeff(1, &[1, 0]), Rational::from(-1));
        let c1 = f.compose(&space, 1, &g).unwrap();
        assert_eq!(c1.coeff(1, &[0, 1]), Rational::one());
    }

    #[test]
    fn boundary_of_chain_map_vanishes() {
        let s = square_zero();
        let id = MultilinearMap::identity(&s.space);
        assert!(boundary(&s.space, &s.d_a, &id).unwrap().is_zero());
    }

    #[test]
    fn structure_and_curvature() {
        let s = square_zero();
        let r = check_structure(&s, 4);
        assert!(r.all_pass(), "{r}");
        for (t, expected) in [(2, 0), (-3, 0), (1, -4), (0, -6)] {
            let a = Element::from_coords(&s.space, 0, [(0, Rational::from(t))]).unwrap();
            let c = curvature_of(&s, &a).unwrap();
            assert_eq!(c.coord(1), Rational::from(expected), "t = {t}");
        }
    }

    #[test]
    fn twisting_square_zero() {
        let s = square_zero();
        assert_eq!(twist_algebra(&s, &Element::zero(0)).unwrap(), s);
        for t in [2, -3, 1, 5] {
            let a = Element::from_coords(&s.space, 0, [(0, Rational::from(t))]).unwrap();
            let tw = twist_algebra(&s, &a).unwrap();
            assert_eq!(tw.op(1).coeff(1, &[0]), Rational::from(2 * t));
            assert_eq!(tw.op(0).coeff(1, &[]), curvature_of(&s, &a).unwrap().coord(1));
            assert!(check_structure(&tw, 4).all_pass());
        }
    }

    #[test]
    fn realize_associator() {
        let s = square_zero();
        let p = build_preset(PresetName::CAinf, 3).unwrap();
        let x = parse_element("mu_2(mu_2(1, 2), 3)", &p.table(), Mode::Nonsymmetric).unwrap();
        // μ₂(μ₂(x, x), x) = μ₂(y, x) = 0
        assert!(s.realize(&x).unwrap().is_zero());
        assert!(s.realize(&OperadElement::zero(Mode::Nonsymmetric, 2, -2)).unwrap().is_zero());
        let m2 = parse_element("mu_2(1, 2)", &p.table(), Mode::Nonsymmetric).unwrap();
        assert_eq!(s.realize(&m2).unwrap(), s.op(2));
    }

    #[test]
    fn json_round_trip() {
        let m = AlgebraManifest {
            structure: square_zero(),
            elements: BTreeMap::new(),
        };
        let text = m.to_json();
        assert_eq!(AlgebraManifest::from_json(&text).unwrap(), m);
    }
}
