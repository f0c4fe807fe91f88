use thiserror::Error;

use crate::algebra::AxiomReport;
use crate::world::{Pair, WorldSet};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a closure could not be a belief algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conflict {
    /// Both `(U, V)` and `(V, U)` were derived.
    Symmetric(Pair),
    /// A pair with an empty left side was derived.
    EmptyLeft(Pair),
}

impl Conflict {
    pub fn witness(self) -> Pair {
        match self {
            Conflict::Symmetric(p) | Conflict::EmptyLeft(p) => p,
        }
    }
}

impl std::fmt::Display for Conflict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Conflict::Symmetric(p) => write!(f, "both {p} and {} derived", p.reversed()),
            Conflict::EmptyLeft(p) => write!(f, "derived {p} with empty left side"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe of {size} worlds exceeds the cap of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("universe mismatch: {left} vs {right} worlds")]
    UniverseMismatch { left: usize, right: usize },
    #[error("world-set {set} lies outside a universe of {size} worlds")]
    OutOfUniverse { set: WorldSet, size: usize },
    #[error("pair sides overlap: {left} and {right}")]
    NotDisjoint { left: WorldSet, right: WorldSet },

    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("{count} atoms exceed the cap of {limit}")]
    TooManyAtoms { count: usize, limit: usize },

    #[error("conflicting information: {0}")]
    Conflict(Conflict),
    #[error("not a belief algebra: {0}")]
    InvalidAlgebra(Box<AxiomReport>),
    #[error("backbone extraction failed: {0}")]
    Backbone(String),
    #[error("support of the empty set is undefined")]
    EmptySupport,
    #[error("belief algebras have different backbones")]
    BackboneMismatch,
    #[error("{0} is not a complete belief algebra")]
    NotComplete(&'static str),
    #[error("invalid preorder: {0}")]
    InvalidPreorder(String),
    #[error("evidence formula has no models")]
    Contradiction,
    #[error("conditional has no models satisfying both antecedent and consequent")]
    UnsatisfiableConditional,
    #[error("internal error: {0}")]
    Internal(String),
}
