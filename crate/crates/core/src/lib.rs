//! Symbolic computation with free dg operads: curved A∞ and L∞ operads,
//! Maurer-Cartan twisting morphisms, the adjunction with the operad `T`
//! generated by `α` and `κ`, and twisting of concrete finite-dimensional
//! algebras.
//!
//! ```
//! use curvop::presets::{build_preset, PresetName};
//! use curvop::dg::check_square_zero;
//!
//! let cainf = build_preset(PresetName::CAinf, 5).unwrap();
//! let report = check_square_zero(&cainf.differential, 3);
//! assert!(report.all_pass());
//! ```

pub mod curv;
pub mod dg;
pub mod endo;
pub mod error;
pub mod homology;
pub mod linalg;
mod manifest;
pub mod morphism;
pub mod operad;
pub mod presets;
pub mod rational;
pub mod signs;
pub mod slices;
pub mod twisting;

pub use error::{Error, Result};
pub use operad::{Generator, Mode, OperadElement, Tree};
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/differentials.md")]
    mod differentials {}
    #[doc = include_str!("../../../book/src/curv.md")]
    mod curv {}
    #[doc = include_str!("../../../book/src/twisting.md")]
    mod twisting {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
}
