use std::fmt;
use std::sync::Arc;

/// Nonsymmetric (planar) or symmetric operads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Nonsymmetric,
    Symmetric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nonsymmetric => "ns",
            Mode::Symmetric => "sym",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Mode> {
        match s.trim() {
            "ns" | "nonsymmetric" => Ok(Mode::Nonsymmetric),
            "sym" | "symmetric" => Ok(Mode::Symmetric),
            other => Err(crate::Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// How the symmetric group acts on a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    /// No relations: every leaf labelling is a distinct operation.
    Planar,
    /// `g^σ = g` for every `σ`.
    FullyInvariant,
}

/// A graded generating operation.
///
/// `filtered` generators (the `α` of the theory) are the ones counted by the
/// α-filtration; completed coproducts truncate by their number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    pub arity: usize,
    pub degree: i64,
    pub symmetry: Symmetry,
    pub filtered: bool,
}

impl Generator {
    pub fn new(name: impl Into<String>, arity: usize, degree: i64) -> Generator {
        Generator {
            name: name.into(),
            arity,
            degree,
            symmetry: Symmetry::Planar,
            filtered: false,
        }
    }

    pub fn invariant(mut self) -> Generator {
        self.symmetry = Symmetry::FullyInvariant;
        self
    }

    pub fn filtered(mut self) -> Generator {
        self.filtered = true;
        self
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn shared(self) -> Arc<Generator> {
        Arc::new(self)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
