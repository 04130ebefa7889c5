//! Exhaustive enumeration of trees with prescribed vertex counts.

use std::collections::HashMap;
use std::sync::Arc;

use crate::linalg::BasisSlice;
use crate::operad::{canonical_form, Generator, Mode, Tree};
use crate::signs::Permutation;

/// Enumerates trees over `generators` using generator `i` exactly
/// `counts[i]` times. Leaves are unlabelled (`Leaf(0)`) until
/// [`canonical_trees`] labels them.
pub struct ShapeEnumerator {
    generators: Vec<Arc<Generator>>,
    shapes: HashMap<(Vec<usize>, usize), Vec<Tree>>,
}

impl ShapeEnumerator {
    pub fn new(generators: &[Arc<Generator>]) -> ShapeEnumerator {
        ShapeEnumerator {
            generators: generators.to_vec(),
            shapes: HashMap::new(),
        }
    }

    fn leaf_count(&self, counts: &[usize]) -> Option<usize> {
        let mut total: i64 = 1;
        for (g, &c) in self.generators.iter().zip(counts) {
            total += c as i64 * (g.arity as i64 - 1);
        }
        usize::try_from(total).ok()
    }

    /// Planar trees with the given counts and number of leaves.
    pub fn shapes(&mut self, counts: &[usize], leaves: usize) -> Vec<Tree> {
        if self.leaf_count(counts) != Some(leaves) {
            return Vec::new();
        }
        let key = (counts.to_vec(), leaves);
        if let Some(v) = self.shapes.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if leaves == 1 && counts.iter().all(|&c| c == 0) {
            out.push(Tree::Leaf(0));
        }
        for i in 0..self.generators.len() {
            if counts[i] == 0 {
                continue;
            }
            let g = self.generators[i].clone();
            let mut rest = counts.to_vec();
            rest[i] -= 1;
            for children in self.forests(&rest, leaves, g.arity) {
                out.push(Tree::Node(g.clone(), children));
            }
        }
        self.shapes.insert(key, out.clone());
        out
    }

    fn forests(&mut self, counts: &[usize], leaves: usize, k: usize) -> Vec<Vec<Tree>> {
        if k == 0 {
            return if leaves == 0 && counts.iter().all(|&c| c == 0) {
                vec![vec![]]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        for first in sub_vectors(counts) {
            let rest: Vec<usize> = counts.iter().zip(&first).map(|(a, b)| a - b).collect();
            for l in 0..=leaves {
                let heads = self.shapes(&first, l);
                if heads.is_empty() {
                    continue;
                }
                let tails = self.forests(&rest, leaves - l, k - 1);
                for h in &heads {
                    for t in &tails {
                        let mut v = Vec::with_capacity(k);
                        v.push(h.clone());
                        v.extend(t.iter().cloned());
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Number of planar trees, without building them.
    pub fn count(&self, counts: &[usize], leaves: usize) -> u128 {
        let mut memo = HashMap::new();
        self.count_inner(counts, leaves, &mut memo)
    }

    fn count_inner(&self, counts: &[usize], leaves: usize, memo: &mut HashMap<(Vec<usize>, usize), u128>) -> u128 {
        if self.leaf_count(counts) != Some(leaves) {
            return 0;
        }
        if let Some(&v) = memo.get(&(counts.to_vec(), leaves)) {
            return v;
        }
        let mut total = u128::from(leaves == 1 && counts.iter().all(|&c| c == 0));
        for i in 0..self.generators.len() {
            if counts[i] == 0 {
                continue;
            }
            let mut rest = counts.to_vec();
            rest[i] -= 1;
            total += self.count_forests(&rest, leaves, self.generators[i].arity, memo);
        }
        memo.insert((counts.to_vec(), leaves), total);
        total
    }

    fn count_forests(
        &self,
        counts: &[usize],
        leaves: usize,
        k: usize,
        memo: &mut HashMap<(Vec<usize>, usize), u128>,
    ) -> u128 {
        if k == 0 {
            return u128::from(leaves == 0 && counts.iter().all(|&c| c == 0));
        }
        let mut total = 0;
        for first in sub_vectors(counts) {
            let rest: Vec<usize> = counts.iter().zip(&first).map(|(a, b)| a - b).collect();
            for l in 0..=leaves {
                let h = self.count_inner(&first, l, memo);
                if h > 0 {
                    total += h * self.count_forests(&rest, leaves - l, k - 1, memo);
                }
            }
        }
        total
    }
}

fn sub_vectors(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn label_planar(t: &Tree, images: &[usize], next: &mut usize) -> Tree {
    match t {
        Tree::Leaf(_) => {
            let l = images[*next];
            *next += 1;
            Tree::Leaf(l)
        }
        Tree::Node(g, ch) => Tree::Node(g.clone(), ch.iter().map(|c| label_planar(c, images, next)).collect()),
    }
}

/// All nonzero canonical trees of the given arity and vertex counts.
pub fn canonical_trees(generators: &[Arc<Generator>], counts: &[usize], arity: usize, mode: Mode) -> Vec<Tree> {
    let mut e = ShapeEnumerator::new(generators);
    let shapes = e.shapes(counts, arity);
    let labellings: Vec<Vec<usize>> = match mode {
        Mode::Nonsymmetric => vec![(1..=arity).collect()],
        Mode::Symmetric => Permutation::all(arity)
            .iter()
            .map(Permutation::images)
            .collect(),
    };
    let mut out = Vec::new();
    for s in &shapes {
        for l in &labellings {
            let t = label_planar(s, l, &mut 0);
            if let Some((c, _)) = canonical_form(&t, mode) {
                out.push(c);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Upper bound on the size of a slice: planar shapes times leaf labellings.
pub fn estimated_size(generators: &[Arc<Generator>], counts: &[usize], arity: usize, mode: Mode) -> u128 {
    let shapes = ShapeEnumerator::new(generators).count(counts, arity);
    match mode {
        Mode::Nonsymmetric => shapes,
        Mode::Symmetric => shapes * (1..=arity as u128).product::<u128>(),
    }
}

/// The slice spanned by [`canonical_trees`].
pub fn slice(
    mode: Mode,
    generators: &[Arc<Generator>],
    counts: &[usize],
    arity: usize,
    description: impl Into<String>,
) -> BasisSlice {
    let degree = generators.iter().zip(counts).map(|(g, &c)| g.degree * c as i64).sum();
    BasisSlice::new(mode, arity, degree, description, canonical_trees(generators, counts, arity, mode))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Arc<Generator> {
        Generator::new("m", 2, -1).shared()
    }

    #[test]
    fn catalan_numbers() {
        let g = [binary()];
        let e = ShapeEnumerator::new(&g);
        let counts: Vec<u128> = (0..7).map(|c| e.count(&[c], c + 1)).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
        let mut e = ShapeEnumerator::new(&g);
        assert_eq!(e.shapes(&[4], 5).len(), 14);
    }

    #[test]
    fn identity_is_the_only_empty_tree() {
        let g = [binary()];
        assert_eq!(canonical_trees(&g, &[0], 1, Mode::Nonsymmetric), vec![Tree::identity()]);
        assert!(canonical_trees(&g, &[0], 2, Mode::Nonsymmetric).is_empty());
    }

    #[test]
    fn planar_positions_of_nullary_vertices() {
        let k = Generator::new("kappa", 0, -1).shared();
        let g = [binary(), k];
        // binary trees with 4 inputs, one of them κ: 5 shapes, 4 positions
        assert_eq!(canonical_trees(&g, &[3, 1], 3, Mode::Nonsymmetric).len(), 20);
    }

    #[test]
    fn symmetric_binary_trees() {
        let l = Generator::new("l_2", 2, -1).invariant().shared();
        // (2n-3)!! unrooted-leaf binary trees on n labelled leaves
        assert_eq!(canonical_trees(&[l.clone()], &[1], 2, Mode::Symmetric).len(), 1);
        assert_eq!(canonical_trees(&[l.clone()], &[2], 3, Mode::Symmetric).len(), 3);
        assert_eq!(canonical_trees(&[l], &[3], 4, Mode::Symmetric).len(), 15);
    }
}
