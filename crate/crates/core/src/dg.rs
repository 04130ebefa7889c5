//! Derivations of free operads, the operadic bracket and square-zero checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operad::subst::substitute;
use crate::operad::{compose_all, min_precision, Generator, GeneratorTable, Mode, OperadElement};
use crate::signs::Sign;

/// A degree `-1` derivation given by its values on generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    mode: Mode,
    generators: GeneratorTable,
    values: BTreeMap<String, OperadElement>,
    truncated: BTreeSet<String>,
}

impl Derivation {
    /// The zero derivation on the given generators.
    pub fn new<'a>(mode: Mode, generators: impl IntoIterator<Item = &'a Arc<Generator>>) -> Result<Derivation> {
        let mut table = GeneratorTable::new();
        let mut values = BTreeMap::new();
        for g in generators {
            if table.insert(g.name.clone(), g.clone()).is_some() {
                return Err(Error::NameCollision(g.name.clone()));
            }
            values.insert(g.name.clone(), OperadElement::zero(mode, g.arity, g.degree - 1));
        }
        Ok(Derivation {
            mode,
            generators: table,
            values,
            truncated: BTreeSet::new(),
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn generators(&self) -> &GeneratorTable {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Result<&Arc<Generator>> {
        self.generators.get(name).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn value(&self, name: &str) -> Result<&OperadElement> {
        self.values.get(name).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn values(&self) -> &BTreeMap<String, OperadElement> {
        &self.values
    }

    /// Sets `D(name)`, checking arity, degree and that only known generators
    /// occur.
    pub fn set(&mut self, name: &str, value: OperadElement) -> Result<()> {
        let g = self.generator(name)?.clone();
        if value.mode() != self.mode {
            return Err(Error::ModeMismatch(self.mode, value.mode()));
        }
        if value.arity() != g.arity {
            return Err(Error::ArityMismatch(g.arity, value.arity()));
        }
        if !value.is_zero() && value.degree() != g.degree - 1 {
            return Err(Error::DegreeMismatch(g.degree - 1, value.degree()));
        }
        for n in value.generator_names() {
            if !self.generators.contains_key(&n) {
                return Err(Error::UnknownGenerator(n));
            }
        }
        let value = if value.is_zero() {
            OperadElement::zero(self.mode, g.arity, g.degree - 1).with_precision(value.precision())
        } else {
            value
        };
        self.values.insert(name.to_string(), value);
        Ok(())
    }

    /// Records that the stored value of `name` is missing terms beyond the
    /// arity bound.
    pub fn mark_truncated(&mut self, name: &str) {
        self.truncated.insert(name.to_string());
    }

    pub fn is_truncated(&self, name: &str) -> bool {
        self.truncated.contains(name)
    }

    pub fn truncated(&self) -> &BTreeSet<String> {
        &self.truncated
    }

    /// The sum of two derivations on disjoint generator sets.
    pub fn union(&self, other: &Derivation) -> Result<Derivation> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        let mut out = self.clone();
        for (n, g) in &other.generators {
            if out.generators.insert(n.clone(), g.clone()).is_some() {
                return Err(Error::NameCollision(n.clone()));
            }
            out.values.insert(n.clone(), other.values[n].clone());
        }
        out.truncated.extend(other.truncated.iter().cloned());
        Ok(out)
    }

    /// Applies the derivation via the Leibniz rule: the vertex `v` of a tree
    /// is replaced by `D(v)` with the sign of passing `D` over the vertices
    /// before `v` in preorder.
    pub fn apply(&self, x: &OperadElement) -> Result<OperadElement> {
        if x.mode() != self.mode {
            return Err(Error::ModeMismatch(self.mode, x.mode()));
        }
        let used = x.generator_names();
        let mut drop = 0i64;
        let mut precision = None;
        for n in &used {
            self.generator(n)?;
            if self.truncated.contains(n) {
                return Err(Error::TruncationExceeded(n.clone()));
            }
            precision = min_precision(precision, self.values[n].precision());
        }
        // terms beyond the precision of x may involve any generator
        if x.precision().is_some() {
            for (n, v) in &self.values {
                if let Some(m) = v.min_alpha_count() {
                    drop = drop.max(i64::from(self.generators[n].filtered) - m as i64);
                }
            }
        }
        let precision = min_precision(precision, x.precision().map(|p| p - drop));
        let mut out = OperadElement::zero(self.mode, x.arity(), x.degree() - 1).with_precision(precision);
        for (t, c) in x.terms() {
            let verts = t.vertices();
            let mut prefix = 0i64;
            let mut choices = vec![None; verts.len()];
            for (k, g) in verts.iter().enumerate() {
                let sign = Sign::from_parity(prefix);
                prefix += g.degree;
                let v = &self.values[&g.name];
                for (rep, c2) in v.terms() {
                    choices[k] = Some(rep);
                    let tagged = substitute(t, &choices);
                    let coeff = c * c2;
                    out.add_tagged(tagged, if sign.is_minus() { -coeff } else { coeff });
                }
                choices[k] = None;
            }
        }
        Ok(out)
    }

    /// `self ∘ other + other ∘ self` evaluated on generator `name`.
    pub fn anticommutator_on(&self, other: &Derivation, name: &str) -> Result<OperadElement> {
        let g = self.generator(name)?;
        let x = OperadElement::generator(g, self.mode);
        let a = self.apply(&other.apply(&x)?)?;
        let b = other.apply(&self.apply(&x)?)?;
        a.add(&b)
    }

    /// `D ∘ D` on generator `name`.
    pub fn square_on(&self, name: &str) -> Result<OperadElement> {
        let g = self.generator(name)?;
        let x = OperadElement::generator(g, self.mode);
        self.apply(&self.apply(&x)?)
    }
}

/// `[x, y] = Σ x ∘_i y − (−1)^{|x||y|} Σ y ∘_i x`.
pub fn bracket(x: &OperadElement, y: &OperadElement) -> Result<OperadElement> {
    let a = compose_all(x, y)?;
    let b = compose_all(y, x)?;
    let sign = Sign::koszul(x.degree(), y.degree());
    if sign.is_minus() {
        a.add(&b)
    } else {
        a.sub(&b)
    }
}

/// `D = d0 + d1` by κ-weight shift.
#[derive(Clone, Debug)]
pub struct WeightSplitDerivation {
    pub kappa: String,
    pub d0: Derivation,
    pub d1: Derivation,
}

/// Splits a derivation by how far it raises the number of `kappa` vertices.
pub fn split_by_weight(d: &Derivation, kappa: &str) -> Result<WeightSplitDerivation> {
    let mut d0 = Derivation::new(d.mode, d.generators.values())?;
    let mut d1 = d0.clone();
    for (name, value) in &d.values {
        let w = usize::from(name == kappa);
        for (wv, part) in value.kappa_weight_split(kappa) {
            if part.is_zero() {
                continue;
            }
            if wv == w {
                d0.set(name, part)?;
            } else if wv == w + 1 {
                d1.set(name, part)?;
            } else {
                return Err(Error::NonMixedDifferential {
                    generator: name.clone(),
                    shift: wv as i64 - w as i64,
                });
            }
        }
    }
    for t in &d.truncated {
        d0.mark_truncated(t);
        d1.mark_truncated(t);
    }
    Ok(WeightSplitDerivation {
        kappa: kappa.to_string(),
        d0,
        d1,
    })
}

impl WeightSplitDerivation {
    pub fn reassemble(&self) -> Result<Derivation> {
        let mut d = self.d0.clone();
        for (name, v) in &self.d1.values {
            let sum = d.values[name].add(v)?;
            d.set(name, sum)?;
        }
        Ok(d)
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(OperadElement),
    /// A structural condition failed.
    Violation(String),
    /// Not checked; the reason is printed.
    Skip(String),
}

/// A list of named checks, printed one per line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<(String, CheckStatus)>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, status: CheckStatus) {
        self.entries.push((name.into(), status));
    }

    pub fn push_residue(&mut self, name: impl Into<String>, residue: Result<OperadElement>) {
        let status = match residue {
            Ok(r) if r.is_zero() => CheckStatus::Pass,
            Ok(r) => CheckStatus::Fail(r),
            Err(Error::TruncationExceeded(g)) => CheckStatus::Skip(format!("truncated at {g}")),
            Err(e) => CheckStatus::Skip(e.to_string()),
        };
        self.push(name, status);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// No failures (skips allowed).
    pub fn all_pass(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, s)| !matches!(s, CheckStatus::Fail(_) | CheckStatus::Violation(_)))
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|(_, s)| *s == CheckStatus::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, s)| matches!(s, CheckStatus::Fail(_) | CheckStatus::Violation(_)))
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|(_, s)| matches!(s, CheckStatus::Skip(_))).count()
    }

    /// Names of failed checks.
    pub fn failures(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, s)| matches!(s, CheckStatus::Fail(_) | CheckStatus::Violation(_)))
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn status(&self, name: &str) -> Option<&CheckStatus> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, s) in &self.entries {
            match s {
                CheckStatus::Pass => writeln!(f, "{name} PASS")?,
                CheckStatus::Fail(r) => writeln!(f, "{name} FAIL residue={r}")?,
                CheckStatus::Violation(why) => writeln!(f, "{name} FAIL {why}")?,
                CheckStatus::Skip(why) => writeln!(f, "{name} SKIP ({why})")?,
            }
        }
        Ok(())
    }
}

/// `D(D(g))` for every generator of arity at most `arity_bound`. Generators
/// whose second differential needs values cut off by the arity bound are
/// reported as skipped.
pub fn check_square_zero(d: &Derivation, arity_bound: usize) -> Report {
    let mut gens: Vec<&Arc<Generator>> = d.generators.values().filter(|g| g.arity <= arity_bound).collect();
    gens.sort_by(|a, b| (a.arity, &a.name).cmp(&(b.arity, &b.name)));
    let mut report = Report::default();
    for g in gens {
        let residue = if d.is_truncated(&g.name) {
            Err(Error::TruncationExceeded(g.name.clone()))
        } else {
            d.square_on(&g.name)
        };
        report.push_residue(g.name.clone(), residue);
    }
    report
}
