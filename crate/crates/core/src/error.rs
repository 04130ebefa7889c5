use thiserror::Error;

use crate::operad::Mode;

/// Everything that can go wrong in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("position {position} out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("duplicate generator name `{0}`")]
    NameCollision(String),
    #[error("differential of `{generator}` has a component of kappa-weight shift {shift}")]
    NonMixedDifferential { generator: String, shift: i64 },
    #[error("value of `{0}` is truncated by the arity bound")]
    TruncationExceeded(String),
    #[error("element is not closed: {0}")]
    NotClosed(String),
    #[error("no solution: {0}")]
    NotSolvable(String),
    #[error("element is not in the image: {0}")]
    NotInImage(String),
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("image escapes the codomain slice: {0}")]
    ImageEscapesSlice(String),
    #[error("maps do not compose to zero")]
    NotAComplex,
    #[error("nilpotency bound {bound} exceeded: {detail}")]
    NilpotencyExceeded { bound: usize, detail: String },
    #[error("unbound generator `{0}`")]
    UnboundGenerator(String),
    #[error("invalid manifest: {0}")]
    Manifest(String),
}

pub type Result<T> = std::result::Result<T, Error>;
