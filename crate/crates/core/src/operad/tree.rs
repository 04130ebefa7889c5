use std::fmt;
use std::sync::Arc;

use super::generator::{Generator, Mode, Symmetry};
use crate::signs::{inversion_parity, Sign};

/// A decorated tree: vertices are generators, external leaves carry labels.
///
/// The bare leaf `Leaf(1)` is the operadic identity. A tree stands for the
/// tensor product of its vertex labels taken in preorder; all signs in the
/// engine come from reordering such tensor products.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(usize),
    Node(Arc<Generator>, Vec<Tree>),
}

impl Tree {
    /// The corolla `g(1, ..., n)`.
    pub fn corolla(g: &Arc<Generator>) -> Tree {
        Tree::Node(g.clone(), (1..=g.arity).map(Tree::Leaf).collect())
    }

    pub fn identity() -> Tree {
        Tree::Leaf(1)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, ch) => ch.iter().map(Tree::arity).sum(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.fold(0, &mut |acc, g| acc + g.degree)
    }

    pub fn vertex_count(&self) -> usize {
        self.fold(0, &mut |acc, _| acc + 1)
    }

    /// Number of vertices labelled by a generator with this name.
    pub fn count_named(&self, name: &str) -> usize {
        self.fold(0, &mut |acc, g| acc + usize::from(g.name == name))
    }

    /// Number of filtered (α-type) vertices.
    pub fn alpha_count(&self) -> usize {
        self.fold(0, &mut |acc, g| acc + usize::from(g.filtered))
    }

    /// Folds over vertices in preorder.
    pub fn fold<A>(&self, init: A, f: &mut impl FnMut(A, &Arc<Generator>) -> A) -> A {
        match self {
            Tree::Leaf(_) => init,
            Tree::Node(g, ch) => {
                let mut acc = f(init, g);
                for c in ch {
                    acc = c.fold(acc, f);
                }
                acc
            }
        }
    }

    /// Vertex labels in preorder.
    pub fn vertices(&self) -> Vec<Arc<Generator>> {
        self.fold(Vec::new(), &mut |mut v, g| {
            v.push(g.clone());
            v
        })
    }

    /// External leaf labels in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn min_leaf(&self) -> Option<usize> {
        match self {
            Tree::Leaf(l) => Some(*l),
            Tree::Node(_, ch) => ch.iter().filter_map(Tree::min_leaf).min(),
        }
    }

    pub fn root(&self) -> Option<&Arc<Generator>> {
        match self {
            Tree::Leaf(_) => None,
            Tree::Node(g, _) => Some(g),
        }
    }

    /// Renames leaves through `f`.
    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Node(g, ch) => Tree::Node(g.clone(), ch.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    /// Checks vertex arities and that the leaves are `1..=n` (in planar
    /// order for nonsymmetric mode).
    pub fn validate(&self, mode: Mode) -> Result<(), String> {
        self.check_arities()?;
        let leaves = self.leaves();
        let n = leaves.len();
        match mode {
            Mode::Nonsymmetric => {
                if leaves.iter().enumerate().any(|(i, &l)| l != i + 1) {
                    return Err(format!("leaves {leaves:?} are not 1..{n} in order"));
                }
            }
            Mode::Symmetric => {
                let mut sorted = leaves.clone();
                sorted.sort_unstable();
                if sorted.iter().enumerate().any(|(i, &l)| l != i + 1) {
                    return Err(format!("leaves {leaves:?} are not a permutation of 1..{n}"));
                }
            }
        }
        Ok(())
    }

    fn check_arities(&self) -> Result<(), String> {
        match self {
            Tree::Leaf(_) => Ok(()),
            Tree::Node(g, ch) => {
                if ch.len() != g.arity {
                    return Err(format!("`{}` has arity {} but {} children", g.name, g.arity, ch.len()));
                }
                ch.iter().try_for_each(Tree::check_arities)
            }
        }
    }

    pub(crate) fn tagged_from(&self, next: &mut usize) -> Tagged {
        match self {
            Tree::Leaf(l) => Tagged::Leaf(*l),
            Tree::Node(g, ch) => {
                let tag = *next;
                *next += 1;
                Tagged::Node {
                    gen: g.clone(),
                    tag,
                    children: ch.iter().map(|c| c.tagged_from(next)).collect(),
                }
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => write!(f, "{l}"),
            Tree::Node(g, ch) => {
                f.write_str(&g.name)?;
                if !ch.is_empty() {
                    f.write_str("(")?;
                    for (k, c) in ch.iter().enumerate() {
                        if k > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A tree whose vertices remember their position in a source tensor product.
pub(crate) enum Tagged {
    Leaf(usize),
    Node {
        gen: Arc<Generator>,
        tag: usize,
        children: Vec<Tagged>,
    },
}

struct Canon {
    tree: Tree,
    // (source tag, odd degree) in preorder
    order: Vec<(usize, bool)>,
    degree: i64,
    min_leaf: Option<usize>,
}

fn canon(t: Tagged, mode: Mode) -> Option<Canon> {
    match t {
        Tagged::Leaf(l) => Some(Canon {
            tree: Tree::Leaf(l),
            order: Vec::new(),
            degree: 0,
            min_leaf: Some(l),
        }),
        Tagged::Node { gen, tag, children } => {
            let mut kids = Vec::with_capacity(children.len());
            for c in children {
                kids.push(canon(c, mode)?);
            }
            if mode == Mode::Symmetric && gen.symmetry == Symmetry::FullyInvariant {
                kids.sort_by(|a, b| match (a.min_leaf, b.min_leaf) {
                    (Some(x), Some(y)) => x.cmp(&y),
                    (Some(_), None) => std::cmp::Ordering::Less,
                    (None, Some(_)) => std::cmp::Ordering::Greater,
                    (None, None) => a.tree.cmp(&b.tree),
                });
                // swapping two equal odd siblings negates the element
                if kids
                    .windows(2)
                    .any(|w| w[0].min_leaf.is_none() && w[0].tree == w[1].tree && w[0].degree.rem_euclid(2) == 1)
                {
                    return None;
                }
            }
            let mut order = vec![(tag, gen.is_odd())];
            let mut degree = gen.degree;
            let mut min_leaf = None;
            let mut trees = Vec::with_capacity(kids.len());
            for k in kids {
                order.extend(k.order);
                degree += k.degree;
                min_leaf = match (min_leaf, k.min_leaf) {
                    (None, m) => m,
                    (m, None) => m,
                    (Some(a), Some(b)) => Some(a.min(b)),
                };
                trees.push(k.tree);
            }
            Some(Canon {
                tree: Tree::Node(gen, trees),
                order,
                degree,
                min_leaf,
            })
        }
    }
}

/// Canonical form of a tagged tree and the Koszul sign of reordering its
/// vertices from tag order into canonical preorder; `None` if the tree is
/// zero in the free operad.
pub(crate) fn canonicalize_tagged(t: Tagged, mode: Mode) -> Option<(Tree, Sign)> {
    let c = canon(t, mode)?;
    let odd_tags: Vec<usize> = c.order.iter().filter(|(_, odd)| *odd).map(|(t, _)| *t).collect();
    Some((c.tree, inversion_parity(&odd_tags)))
}

/// Canonical form of an arbitrary tree, read as the tensor product of its
/// vertices in its own preorder.
pub fn canonical_form(t: &Tree, mode: Mode) -> Option<(Tree, Sign)> {
    let mut next = 0;
    canonicalize_tagged(t.tagged_from(&mut next), mode)
}
