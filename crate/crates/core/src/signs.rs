//! Permutations, shuffles and Koszul signs.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use crate::error::Error;
use crate::rational::Rational;

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`
    pub fn from_parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The Koszul sign `(-1)^(a*b)` of passing a degree-`a` object past a
    /// degree-`b` one.
    pub fn koszul(a: i64, b: i64) -> Sign {
        Sign::from_parity(a.rem_euclid(2) * b.rem_euclid(2))
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_rational(self) -> Rational {
        Rational::from_integer(self.value())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Parity of the number of inversions in a sequence.
pub fn inversion_parity<T: Ord>(seq: &[T]) -> Sign {
    let mut n = 0i64;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                n += 1;
            }
        }
    }
    Sign::from_parity(n)
}

/// A permutation of `{1..n}`, stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based images `[σ(1), ..., σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Permutation, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(images.to_vec()));
            }
            seen[i - 1] = true;
            out.push(i - 1);
        }
        Ok(Permutation { images: out })
    }

    /// The transposition of `i` and `j` (1-based) on `n` letters.
    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// The plain sign of the permutation.
    pub fn signature(&self) -> Sign {
        inversion_parity(&self.images)
    }

    /// Moves the entry at position `i` to position `σ(i)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len());
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, item) in items.iter().enumerate() {
            out[self.images[i]] = Some(item.clone());
        }
        out.into_iter().map(|x| x.unwrap()).collect()
    }

    /// Is the permutation increasing on each of the consecutive blocks of the
    /// given sizes?
    pub fn is_monotone_on_blocks(&self, blocks: &[usize]) -> bool {
        let mut start = 0;
        for &b in blocks {
            let block = &self.images[start..start + b];
            if block.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            start += b;
        }
        start == self.len()
    }

    /// All permutations of `n` letters in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// All `(p,q)`-shuffles: permutations of `{1..p+q}` increasing on `{1..p}`
/// and on `{p+1..p+q}`, in lexicographic order.
pub fn shuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    let mut out = Vec::new();
    // choose the image set of the first block
    let mut chosen = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == p {
            let mut images = chosen.clone();
            images.extend((0..n).filter(|i| !chosen.contains(i)));
            out.push(Permutation { images });
            return;
        }
        for i in start..n {
            chosen.push(i);
            rec(i + 1, n, p, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, p, &mut chosen, &mut out);
    out.sort();
    out
}

/// Inverses of all `(p,q)`-shuffles ("unshuffles"), in lexicographic order.
pub fn enumerate_inverse_shuffles(p: usize, q: usize) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = shuffles(p, q).iter().map(Permutation::inverse).collect();
    out.sort();
    out
}

/// Koszul sign of moving the entry at position `i` to position `σ(i)` in a
/// sequence of graded objects of the given degrees.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i64]) -> Result<Sign, Error> {
    if sigma.len() != degrees.len() {
        return Err(Error::LengthMismatch {
            expected: sigma.len(),
            found: degrees.len(),
        });
    }
    let mut sign = Sign::Plus;
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            if sigma.images[i] > sigma.images[j] {
                sign *= Sign::koszul(degrees[i], degrees[j]);
            }
        }
    }
    Ok(sign)
}

/// `1/k!`
pub fn factorial_inverse(k: usize) -> Rational {
    let mut f = Rational::one();
    for i in 1..=k {
        f *= &Rational::from_integer(i as i64);
    }
    f.recip().expect("k! is nonzero")
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_shuffle_is_identity_on_nothing() {
        let s = enumerate_inverse_shuffles(0, 0);
        assert_eq!(s.len(), 1);
        assert!(s[0].is_empty());
    }

    #[test]
    fn one_one_shuffles() {
        let s = enumerate_inverse_shuffles(1, 1);
        assert_eq!(s, vec![Permutation::identity(2), Permutation::transposition(2, 1, 2)]);
    }

    #[test]
    fn two_one_matches_brute_force() {
        // brute force: filter S_3 by the monotonicity predicate on the inverse
        let brute: Vec<Permutation> = Permutation::all(3)
            .into_iter()
            .filter(|s| s.inverse().is_monotone_on_blocks(&[2, 1]))
            .collect();
        assert_eq!(brute.len(), 3);
        assert_eq!(enumerate_inverse_shuffles(2, 1), brute);
    }

    #[test]
    fn koszul_examples() {
        let id = Permutation::identity(3);
        assert_eq!(koszul_sign(&id, &[-1, 5, 3]).unwrap(), Sign::Plus);
        let t = Permutation::transposition(2, 1, 2);
        assert_eq!(koszul_sign(&t, &[-1, -1]).unwrap(), Sign::Minus);
        assert_eq!(koszul_sign(&t, &[0, -1]).unwrap(), Sign::Plus);
        assert!(koszul_sign(&t, &[0]).is_err());
    }

    #[test]
    fn factorial_inverses() {
        assert_eq!(factorial_inverse(0), Rational::one());
        assert_eq!(factorial_inverse(1), Rational::one());
        assert_eq!(factorial_inverse(4), Rational::new(1, 24));
    }

    #[test]
    fn permute_moves_entries() {
        let s = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(s.permute(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
        assert!(Permutation::from_images(&[1, 1]).is_err());
    }
}
