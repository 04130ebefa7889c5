//! Vertex substitution, the common core of derivations and morphisms.

use super::tree::{Tagged, Tree};

/// Replaces vertex `k` (in preorder) of `tree` by `choices[k]` when it is
/// `Some`. The source tensor order is the preorder of `tree`, with each
/// replaced vertex expanded into the preorder of its replacement.
pub(crate) fn substitute(tree: &Tree, choices: &[Option<&Tree>]) -> Tagged {
    let mut offsets = Vec::with_capacity(choices.len());
    let mut acc = 0;
    for c in choices {
        offsets.push(acc);
        acc += c.map_or(1, Tree::vertex_count);
    }
    let mut k = 0;
    build(tree, choices, &offsets, &mut k)
}

fn build(t: &Tree, choices: &[Option<&Tree>], offsets: &[usize], k: &mut usize) -> Tagged {
    match t {
        Tree::Leaf(l) => Tagged::Leaf(*l),
        Tree::Node(g, ch) => {
            let idx = *k;
            *k += 1;
            let children: Vec<Tagged> = ch.iter().map(|c| build(c, choices, offsets, k)).collect();
            match choices[idx] {
                None => Tagged::Node {
                    gen: g.clone(),
                    tag: offsets[idx],
                    children,
                },
                Some(rep) => {
                    let mut slots: Vec<Option<Tagged>> = children.into_iter().map(Some).collect();
                    let mut next = offsets[idx];
                    instantiate(rep, &mut slots, &mut next)
                }
            }
        }
    }
}

fn instantiate(rep: &Tree, slots: &mut [Option<Tagged>], next: &mut usize) -> Tagged {
    match rep {
        Tree::Leaf(j) => slots[j - 1].take().expect("replacement leaves are distinct"),
        Tree::Node(g, ch) => {
            let tag = *next;
            *next += 1;
            Tagged::Node {
                gen: g.clone(),
                tag,
                children: ch.iter().map(|c| instantiate(c, slots, next)).collect(),
            }
        }
    }
}
