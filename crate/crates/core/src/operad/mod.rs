//! Free graded operads, nonsymmetric and symmetric, on canonical trees.
//!
//! Every tree is identified with the tensor product of its vertex labels in
//! preorder. Composition, the symmetric-group action and vertex substitution
//! all produce a tree together with the order in which its vertices arrived;
//! the Koszul sign of sorting that order into the canonical preorder is the
//! only sign the free operad ever sees.

mod element;
mod generator;
mod parse;
pub(crate) mod subst;
mod tree;

pub use element::OperadElement;
pub use generator::{Generator, Mode, Symmetry};
pub use parse::{parse_element, parse_element_as, table_of, GeneratorTable};
pub use tree::{canonical_form, Tree};

pub(crate) use element::min_precision;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Canonicalizes `c · t`, reading `t` as the tensor product of its vertices
/// in its own preorder.
pub fn canonicalize(t: &Tree, c: Rational, mode: Mode) -> Result<OperadElement> {
    OperadElement::from_tree(t, c, mode)
}

/// `x ∘_i y`.
pub fn compose(x: &OperadElement, i: usize, y: &OperadElement) -> Result<OperadElement> {
    x.compose(i, y)
}

/// Sum of `x ∘_i y` over all slots `i`.
pub fn compose_all(x: &OperadElement, y: &OperadElement) -> Result<OperadElement> {
    if x.mode() != y.mode() {
        return Err(Error::ModeMismatch(x.mode(), y.mode()));
    }
    let mut out = OperadElement::zero(x.mode(), (x.arity() + y.arity()).saturating_sub(1), x.degree() + y.degree());
    if x.arity() == 0 {
        return Ok(out);
    }
    for i in 1..=x.arity() {
        let term = x.compose(i, y)?;
        out = out.add(&term)?;
    }
    Ok(out)
}
