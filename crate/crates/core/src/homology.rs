//! Finite windows onto the acyclicity statements behind the curved and
//! twisted constructions: `[−, κ]` on a free operad, and `d_T` on `P ∨ T`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::dg::{bracket, CheckStatus, Derivation, Report};
use crate::error::Result;
use crate::linalg::{homology_dimension, kernel_rank, matrix_of, BasisSlice};
use crate::operad::{canonical_form, Generator, Mode, OperadElement, Tree};
use crate::presets::{ALPHA, KAPPA_T};
use crate::slices::{estimated_size, slice};

/// A homology or kernel dimension on one slice; it passes when zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCheck {
    pub name: String,
    /// Dimension of the slice the quantity lives on.
    pub dimension: usize,
    pub kind: WindowKind,
    pub value: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowKind {
    Homology,
    Kernel,
}

impl WindowCheck {
    pub fn passed(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for WindowCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            WindowKind::Homology => "homology",
            WindowKind::Kernel => "kernel",
        };
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{} dim={} {kind}={} {verdict}", self.name, self.dimension, self.value)
    }
}

/// Collects window checks into a report.
pub fn windows_report(checks: &[WindowCheck]) -> Report {
    let mut r = Report::default();
    for c in checks {
        let status = if c.passed() {
            CheckStatus::Pass
        } else {
            CheckStatus::Violation(format!("{c}"))
        };
        r.push(c.name.clone(), status);
    }
    r
}

fn binary(mode: Mode) -> Arc<Generator> {
    match mode {
        Mode::Nonsymmetric => Generator::new("m", 2, -1).shared(),
        Mode::Symmetric => Generator::new("m", 2, -1).invariant().shared(),
    }
}

/// The free operad on one binary degree −1 generator `m` and `κ`:
/// vertex counts of the arity-`n`, weight-`w` slice.
fn bracket_counts(n: usize, w: usize) -> Option<[usize; 2]> {
    (n + w >= 1).then(|| [n + w - 1, w])
}

/// Homology of `x ↦ [x, κ]` on arity `1..=max_arity`, κ-weight
/// `0..=max_weight`.
pub fn bracket_kappa_windows(mode: Mode, max_arity: usize, max_weight: usize) -> Result<Vec<WindowCheck>> {
    let kappa = Generator::new("kappa", 0, -1).shared();
    let gens = [binary(mode), kappa.clone()];
    let ke = OperadElement::generator(&kappa, mode);
    let slice_at = |n: usize, w: usize| match bracket_counts(n, w) {
        Some(c) => slice(mode, &gens, &c, n, format!("arity {n} weight {w}")),
        None => BasisSlice::new(mode, n, -(w as i64), format!("arity {n} weight {w}"), vec![]),
    };
    let map = |x: &OperadElement| bracket(x, &ke);
    let mut out = Vec::new();
    for n in 1..=max_arity {
        for w in 0..=max_weight {
            let mid = slice_at(n, w);
            let dom = if w == 0 {
                BasisSlice::new(mode, n + 1, mid.degree + 1, "empty", vec![])
            } else {
                slice_at(n + 1, w - 1)
            };
            let cod = slice_at(n - 1, w + 1);
            let d_in = matrix_of(map, &dom, &mid)?;
            let d_out = matrix_of(map, &mid, &cod)?;
            out.push(WindowCheck {
                name: format!("bracket-kappa {mode} arity {n} weight {w}"),
                dimension: mid.len(),
                kind: WindowKind::Homology,
                value: homology_dimension(&d_in, &d_out)?,
            });
        }
    }
    Ok(out)
}

/// `P ∨ T` with `P` free on one binary generator, and `d_T`.
struct DtComplex {
    mode: Mode,
    gens: [Arc<Generator>; 3],
    d: Derivation,
    placeholder: Arc<Generator>,
}

impl DtComplex {
    fn new(mode: Mode) -> Result<DtComplex> {
        let alpha = Generator::new(ALPHA, 0, 0).filtered().shared();
        let kt = Generator::new(KAPPA_T, 0, -1).shared();
        let gens = [binary(mode), alpha, kt.clone()];
        let mut d = Derivation::new(mode, gens.iter())?;
        d.set(ALPHA, OperadElement::generator(&kt, mode))?;
        Ok(DtComplex {
            mode,
            gens,
            d,
            placeholder: Generator::new("*", 0, 0).shared(),
        })
    }

    fn slice(&self, n: usize, a: usize, w: usize) -> BasisSlice {
        let desc = format!("arity {n} alpha {a} weight {w}");
        if n + a + w == 0 {
            return BasisSlice::new(self.mode, n, -(w as i64), desc, vec![]);
        }
        slice(self.mode, &self.gens, &[n + a + w - 1, a, w], n, desc)
    }

    // d_T only moves α/κ_T labels, so trees with the same skeleton span a
    // subcomplex.
    fn skeleton(&self, t: &Tree) -> String {
        fn erase(t: &Tree, p: &Arc<Generator>) -> Tree {
            match t {
                Tree::Leaf(l) => Tree::Leaf(*l),
                Tree::Node(g, _) if g.name == ALPHA || g.name == KAPPA_T => Tree::corolla(p),
                Tree::Node(g, ch) => Tree::Node(g.clone(), ch.iter().map(|c| erase(c, p)).collect()),
            }
        }
        let e = erase(t, &self.placeholder);
        canonical_form(&e, self.mode).map_or_else(|| e.to_string(), |(c, _)| c.to_string())
    }

    fn blocks(&self, s: &BasisSlice) -> BTreeMap<String, BasisSlice> {
        let mut groups: BTreeMap<String, Vec<Tree>> = BTreeMap::new();
        for t in s.trees() {
            groups.entry(self.skeleton(t)).or_default().push(t.clone());
        }
        groups
            .into_iter()
            .map(|(k, ts)| {
                let b = BasisSlice::new(s.mode, s.arity, s.degree, format!("{} [{k}]", s.description), ts);
                (k, b)
            })
            .collect()
    }

    fn block_or_empty(blocks: &BTreeMap<String, BasisSlice>, key: &str, like: &BasisSlice) -> BasisSlice {
        blocks
            .get(key)
            .cloned()
            .unwrap_or_else(|| BasisSlice::new(like.mode, like.arity, like.degree, "empty", vec![]))
    }
}

/// The `d_T` windows on arity `0..=max_arity` and α-count `0..=max_alpha`:
/// the κ_T-weight-0 kernel at positive α-count, and weight-1 homology.
pub fn dt_windows(mode: Mode, max_arity: usize, max_alpha: usize) -> Result<Vec<WindowCheck>> {
    let cx = DtComplex::new(mode)?;
    let map = |x: &OperadElement| cx.d.apply(x);
    let mut out = Vec::new();
    for n in 0..=max_arity {
        for a in 1..=max_alpha {
            let src = cx.slice(n, a, 0);
            let tgt = cx.slice(n, a - 1, 1);
            let (sb, tb) = (cx.blocks(&src), cx.blocks(&tgt));
            let mut kernel = 0;
            for (k, b) in &sb {
                let m = matrix_of(map, b, &DtComplex::block_or_empty(&tb, k, &tgt))?;
                kernel += b.len() - kernel_rank(&m).0;
            }
            out.push(WindowCheck {
                name: format!("dT {mode} arity {n} alpha {a} weight 0"),
                dimension: src.len(),
                kind: WindowKind::Kernel,
                value: kernel,
            });
        }
        for a in 0..=max_alpha {
            let mid = cx.slice(n, a, 1);
            let dom = cx.slice(n, a + 1, 0);
            let cod = if a == 0 {
                BasisSlice::new(mode, n, mid.degree - 1, "empty", vec![])
            } else {
                cx.slice(n, a - 1, 2)
            };
            let (db, mb, cb) = (cx.blocks(&dom), cx.blocks(&mid), cx.blocks(&cod));
            let keys: BTreeSet<&String> = mb.keys().collect();
            let mut h = 0;
            for k in keys {
                let m = &mb[k];
                let d_in = matrix_of(map, &DtComplex::block_or_empty(&db, k, &dom), m)?;
                let d_out = matrix_of(map, m, &DtComplex::block_or_empty(&cb, k, &cod))?;
                h += homology_dimension(&d_in, &d_out)?;
            }
            out.push(WindowCheck {
                name: format!("dT {mode} arity {n} alpha {a} weight 1"),
                dimension: mid.len(),
                kind: WindowKind::Homology,
                value: h,
            });
        }
    }
    Ok(out)
}

/// Largest slice [`bracket_kappa_windows`] enumerates, before labelling
/// symmetry is quotiented out.
pub fn estimated_bracket_size(mode: Mode, max_arity: usize, max_weight: usize) -> u128 {
    let gens = [binary(mode), Generator::new("kappa", 0, -1).shared()];
    let mut best = 0;
    for n in 1..=max_arity {
        for w in 0..=max_weight {
            let mut slices = vec![(n, w), (n - 1, w + 1)];
            if w > 0 {
                slices.push((n + 1, w - 1));
            }
            for (m, v) in slices {
                if let Some(c) = bracket_counts(m, v) {
                    best = best.max(estimated_size(&gens, &c, m, mode));
                }
            }
        }
    }
    best
}

/// Largest slice [`dt_windows`] enumerates, before labelling symmetry is
/// quotiented out.
pub fn estimated_dt_size(mode: Mode, max_arity: usize, max_alpha: usize) -> u128 {
    let gens = [
        binary(mode),
        Generator::new(ALPHA, 0, 0).shared(),
        Generator::new(KAPPA_T, 0, -1).shared(),
    ];
    let mut best = 0;
    for n in 0..=max_arity {
        for (a, w) in (0..=max_alpha + 1)
            .map(|a| (a, 0))
            .chain((0..=max_alpha).map(|a| (a, 1)))
            .chain((0..max_alpha).map(|a| (a, 2)))
        {
            if n + a + w > 0 {
                best = best.max(estimated_size(&gens, &[n + a + w - 1, a, w], n, mode));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_windows_small() {
        let w = bracket_kappa_windows(Mode::Nonsymmetric, 2, 1).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.iter().all(WindowCheck::passed), "{w:?}");
    }

    #[test]
    fn dt_windows_small() {
        for mode in [Mode::Nonsymmetric, Mode::Symmetric] {
            let w = dt_windows(mode, 2, 2).unwrap();
            assert!(w.iter().all(WindowCheck::passed), "{w:?}");
        }
    }

    #[test]
    fn dt_on_mu2_alpha() {
        let cx = DtComplex::new(Mode::Nonsymmetric).unwrap();
        let dom = cx.slice(1, 1, 0);
        let cod = cx.slice(1, 0, 1);
        assert_eq!(dom.len(), 2);
        let m = matrix_of(|x| cx.d.apply(x), &dom, &cod).unwrap();
        assert_eq!(m.nonzero_count(), 2);
        for j in 0..2 {
            let col: Vec<_> = (0..cod.len()).map(|i| m.get(i, j)).filter(|c| !c.is_zero()).collect();
            assert_eq!(col.len(), 1);
            assert!(col[0].abs().is_one());
        }
    }
}
