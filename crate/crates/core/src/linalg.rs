//! Exact sparse linear algebra over the rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::operad::{Mode, OperadElement, Tree};
use crate::rational::Rational;

/// A sparse matrix with rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> RationalMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = RationalMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, Rational::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut by_row: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
        for ((i, j), v) in &other.entries {
            by_row.entry(*i).or_default().push((*j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    *acc.entry((*i, *j)).or_default() += a * *b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for ((i, j), a) in &self.entries {
            out[*i] += a * &v[*j];
        }
        Ok(out)
    }

    /// Rows as sparse integer vectors, each scaled by the lcm of its
    /// denominators.
    fn integer_rows(&self) -> Vec<Row> {
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for ((i, j), v) in &self.entries {
            rows[*i].insert(*j, v.clone());
        }
        rows.into_iter().filter(|r| !r.is_empty()).map(|r| Row::from_rational(&r)).collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix", self.rows, self.cols)?;
        for i in 0..self.rows.min(20) {
            let row: Vec<String> = (0..self.cols.min(20)).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A sparse row of integers, kept primitive (content 1, positive lead).
#[derive(Clone, Debug)]
struct Row(BTreeMap<usize, BigInt>);

impl Row {
    fn from_rational(r: &BTreeMap<usize, Rational>) -> Row {
        let l = r.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut out = BTreeMap::new();
        for (j, v) in r {
            out.insert(*j, v.numer() * (&l / v.denom()));
        }
        let mut row = Row(out);
        row.normalize();
        row
    }

    fn lead(&self) -> Option<(usize, &BigInt)> {
        self.0.iter().next().map(|(j, v)| (*j, v))
    }

    fn normalize(&mut self) {
        let g = self.0.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return;
        }
        let neg = self.lead().is_some_and(|(_, v)| v.is_negative());
        for v in self.0.values_mut() {
            *v = &*v / &g;
            if neg {
                *v = -&*v;
            }
        }
    }

    /// `a·self − b·pivot` eliminating the lead of `self` against `pivot`.
    fn reduce(&mut self, pivot: &Row, col: usize) {
        let a = pivot.0[&col].clone();
        let b = self.0[&col].clone();
        let g = a.gcd(&b);
        let (a, b) = (&a / &g, &b / &g);
        for v in self.0.values_mut() {
            *v = &*v * &a;
        }
        for (j, v) in &pivot.0 {
            let e = self.0.entry(*j).or_insert_with(BigInt::zero);
            *e -= v * &b;
            if e.is_zero() {
                self.0.remove(j);
            }
        }
        self.normalize();
    }
}

/// Row echelon form by sparse fraction-free elimination; pivots by column.
fn echelon(rows: Vec<Row>) -> BTreeMap<usize, Row> {
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    let mut rows = rows;
    // sparse rows first keeps fill-in low
    rows.sort_by_key(|r| r.0.len());
    for mut row in rows {
        while let Some((c, _)) = row.lead() {
            match pivots.get(&c) {
                Some(p) => row.reduce(p, c),
                None => {
                    pivots.insert(c, row);
                    break;
                }
            }
        }
    }
    pivots
}

/// Rank of `m`.
pub fn rank(m: &RationalMatrix) -> usize {
    echelon(m.integer_rows()).len()
}

/// Rank and a basis of the kernel.
pub fn kernel_rank(m: &RationalMatrix) -> (usize, Vec<Vec<Rational>>) {
    let pivots = echelon(m.integer_rows());
    let rank = pivots.len();
    let mut kernel = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains_key(c)) {
        let mut x: BTreeMap<usize, Rational> = BTreeMap::new();
        x.insert(free, Rational::one());
        for (&lead, row) in pivots.iter().rev() {
            if lead > free {
                continue;
            }
            let mut s = Rational::zero();
            for (j, v) in row.0.range(lead + 1..) {
                if let Some(xj) = x.get(j) {
                    s += Rational::from(v.clone()) * xj;
                }
            }
            if !s.is_zero() {
                x.insert(lead, -s / Rational::from(row.0[&lead].clone()));
            }
        }
        let mut v = vec![Rational::zero(); m.cols];
        for (j, val) in x {
            v[j] = val;
        }
        kernel.push(v);
    }
    (rank, kernel)
}

/// A solution of `m · x = b`, if one exists.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return Err(Error::LengthMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let mut aug = m.clone();
    aug.cols += 1;
    for (i, v) in b.iter().enumerate() {
        aug.set(i, m.cols, v.clone());
    }
    let pivots = echelon(aug.integer_rows());
    if pivots.contains_key(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (&lead, row) in pivots.iter().rev() {
        let mut s = Rational::zero();
        for (j, v) in row.0.range(lead + 1..) {
            let xj = if *j == m.cols { -Rational::one() } else { x[*j].clone() };
            s += Rational::from(v.clone()) * xj;
        }
        x[lead] = -s / Rational::from(row.0[&lead].clone());
    }
    Ok(Some(x))
}

/// `dim ker(d_out) − rank(d_in)` for composable maps `d_out ∘ d_in = 0`.
pub fn homology_dimension(d_in: &RationalMatrix, d_out: &RationalMatrix) -> Result<usize> {
    if d_in.rows != d_out.cols {
        return Err(Error::LengthMismatch {
            expected: d_out.cols,
            found: d_in.rows,
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let nullity = d_out.cols - rank(d_out);
    Ok(nullity - rank(d_in))
}

/// An ordered basis of canonical trees with a description of its filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSlice {
    pub mode: Mode,
    pub arity: usize,
    pub degree: i64,
    pub description: String,
    trees: Vec<Tree>,
    index: BTreeMap<Tree, usize>,
}

impl BasisSlice {
    /// Sorts and deduplicates by printed form.
    pub fn new(mode: Mode, arity: usize, degree: i64, description: impl Into<String>, trees: Vec<Tree>) -> BasisSlice {
        let mut keyed: Vec<(String, Tree)> = trees.into_iter().map(|t| (t.to_string(), t)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let trees: Vec<Tree> = keyed.into_iter().map(|(_, t)| t).collect();
        let index = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        BasisSlice {
            mode,
            arity,
            degree,
            description: description.into(),
            trees,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn position(&self, t: &Tree) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn element(&self, j: usize) -> OperadElement {
        let mut e = OperadElement::zero(self.mode, self.arity, self.degree);
        e.add_term(self.trees[j].clone(), Rational::one());
        e
    }

    /// Coordinates of `x`, failing if a term lies outside the slice.
    pub fn coordinates(&self, x: &OperadElement) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (t, c) in x.terms() {
            let i = self
                .position(t)
                .ok_or_else(|| Error::ImageEscapesSlice(format!("{t} not in {}", self.description)))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &[Rational]) -> OperadElement {
        let mut e = OperadElement::zero(self.mode, self.arity, self.degree);
        for (t, c) in self.trees.iter().zip(v) {
            e.add_term(t.clone(), c.clone());
        }
        e
    }
}

/// Column `j` holds the coordinates of `map(domain[j])` in `codomain`.
pub fn matrix_of(
    map: impl Fn(&OperadElement) -> Result<OperadElement>,
    domain: &BasisSlice,
    codomain: &BasisSlice,
) -> Result<RationalMatrix> {
    let mut m = RationalMatrix::zeros(codomain.len(), domain.len());
    for j in 0..domain.len() {
        let image = map(&domain.element(j))?;
        for (t, c) in image.terms() {
            let i = codomain
                .position(t)
                .ok_or_else(|| Error::ImageEscapesSlice(format!("{t} not in {}", codomain.description)))?;
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}
