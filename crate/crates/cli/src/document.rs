//! JSON belief documents.
//!
//! ```json
//! {"atoms": ["b", "f"], "kind": "relation", "pairs": [["b <-> f", [1, 2]]]}
//! {"worlds": 4, "kind": "preorder", "levels": [[0, 1], [2, 3]]}
//! ```
//!
//! Pair sides are sorted arrays of 0-based world indices or formula strings
//! over `atoms`. The trivial pairs `(U, ∅)` are always implied, so emitted
//! documents list only the non-trivial pairs.

use belief_algebra::algebra::gen;
use belief_algebra::logic::{models, parse_formula};
use belief_algebra::preorder::cba_from_preorder;
use belief_algebra::world::tr;
use belief_algebra::{BeliefAlgebra, Pair, Relation, TotalPreorder, Universe, Vocabulary, WorldSet};
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Relation,
    Preorder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Side {
    Worlds(Vec<usize>),
    Formula(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worlds: Option<usize>,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(Side, Side)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<Vec<usize>>>,
}

/// The world universe a document lives in, with its vocabulary if it has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub universe: Universe,
    pub vocab: Option<Vocabulary>,
}

impl Frame {
    pub fn of_universe(universe: Universe) -> Self {
        Frame { universe, vocab: None }
    }

    pub fn of_vocab(vocab: Vocabulary) -> Self {
        Frame { universe: vocab.universe(), vocab: Some(vocab) }
    }

    fn header(&self, kind: Kind) -> Document {
        Document {
            atoms: self.vocab.as_ref().map(|v| v.atoms().to_vec()),
            worlds: Some(self.universe.size()),
            kind,
            pairs: None,
            levels: None,
        }
    }

    /// Checks that `other` describes the same worlds.
    pub fn compatible(&self, other: &Frame) -> Result<(), Failure> {
        if self.universe != other.universe {
            return Err(Failure::input(format!(
                "documents disagree on the world count: {} vs {}",
                self.universe.size(),
                other.universe.size()
            )));
        }
        if let (Some(a), Some(b)) = (&self.vocab, &other.vocab) {
            if a.atoms() != b.atoms() {
                return Err(Failure::input("documents use different atoms"));
            }
        }
        Ok(())
    }

    pub fn vocab(&self) -> Result<&Vocabulary, Failure> {
        self.vocab
            .as_ref()
            .ok_or_else(|| Failure::input("formulas need a document with `atoms`"))
    }

    pub fn resolve(&self, side: &Side) -> Result<WorldSet, Failure> {
        match side {
            Side::Worlds(indices) => {
                if indices.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Failure::input(format!("world indices {indices:?} must be strictly increasing")));
                }
                if let Some(&bad) = indices.iter().find(|&&i| i >= self.universe.size()) {
                    return Err(Failure::input(format!(
                        "world index {bad} out of range for {} worlds",
                        self.universe.size()
                    )));
                }
                Ok(WorldSet::from_indices(indices.iter().copied()))
            }
            Side::Formula(text) => {
                let vocab = self.vocab()?;
                Ok(models(&parse_formula(text, vocab)?, vocab))
            }
        }
    }
}

/// A parsed and validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Belief {
    Relation(Relation),
    Preorder(TotalPreorder),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub frame: Frame,
    pub belief: Belief,
}

impl Loaded {
    /// The belief algebra the document denotes: the closure of its pairs, or
    /// the complete algebra of its preorder.
    pub fn algebra(&self) -> Result<BeliefAlgebra, Failure> {
        match &self.belief {
            Belief::Relation(r) => Ok(gen(r)?),
            Belief::Preorder(p) => Ok(cba_from_preorder(p)),
        }
    }

    /// The literal relation, with the implied trivial pairs.
    pub fn relation(&self) -> Relation {
        match &self.belief {
            Belief::Relation(r) => r.union(&tr(self.frame.universe)).expect("same universe"),
            Belief::Preorder(p) => cba_from_preorder(p).into_relation(),
        }
    }

    pub fn preorder(&self) -> Result<&TotalPreorder, Failure> {
        match &self.belief {
            Belief::Preorder(p) => Ok(p),
            Belief::Relation(_) => Err(Failure::input("expected a document of kind `preorder`")),
        }
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::input(format!("invalid document: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    pub fn frame(&self, max_worlds: usize) -> Result<Frame, Failure> {
        match (&self.atoms, self.worlds) {
            (Some(atoms), worlds) => {
                let size = 1usize.checked_shl(atoms.len() as u32).filter(|s| *s <= max_worlds);
                let Some(size) = size else {
                    return Err(Failure::input(format!(
                        "{} atoms give more than {max_worlds} worlds",
                        atoms.len()
                    )));
                };
                if worlds.is_some_and(|w| w != size) {
                    return Err(Failure::input(format!("`worlds` must be {size} for {} atoms", atoms.len())));
                }
                Ok(Frame::of_vocab(Vocabulary::with_max_atoms(atoms, atoms.len())?))
            }
            (None, Some(worlds)) => Ok(Frame::of_universe(Universe::with_limit(worlds, max_worlds)?)),
            (None, None) => Err(Failure::input("a document needs `atoms` or `worlds`")),
        }
    }

    pub fn load(&self, max_worlds: usize) -> Result<Loaded, Failure> {
        let frame = self.frame(max_worlds)?;
        let belief = match (self.kind, &self.pairs, &self.levels) {
            (Kind::Relation, Some(pairs), None) => {
                let mut rel = Relation::empty(frame.universe);
                for (u, v) in pairs {
                    rel.insert(Pair::new(frame.resolve(u)?, frame.resolve(v)?)?)?;
                }
                Belief::Relation(rel)
            }
            (Kind::Preorder, None, Some(levels)) => {
                let sets = levels
                    .iter()
                    .map(|l| frame.resolve(&Side::Worlds(l.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                Belief::Preorder(TotalPreorder::from_levels(frame.universe, &sets)?)
            }
            (Kind::Relation, _, _) => return Err(Failure::input("a relation document needs `pairs` and no `levels`")),
            (Kind::Preorder, _, _) => return Err(Failure::input("a preorder document needs `levels` and no `pairs`")),
        };
        Ok(Loaded { frame, belief })
    }

    /// Canonical document for a relation: non-trivial pairs in sorted order.
    pub fn from_relation(frame: &Frame, rel: &Relation) -> Document {
        let pairs = rel
            .non_trivial()
            .map(|p| (Side::Worlds(p.left().indices()), Side::Worlds(p.right().indices())))
            .collect();
        Document { pairs: Some(pairs), ..frame.header(Kind::Relation) }
    }

    pub fn from_levels(frame: &Frame, levels: &[WorldSet]) -> Document {
        Document { levels: Some(levels.iter().map(|l| l.indices()).collect()), ..frame.header(Kind::Preorder) }
    }

    pub fn from_preorder(frame: &Frame, p: &TotalPreorder) -> Document {
        Self::from_levels(frame, &p.levels())
    }
}

/// JSON form of a pair: two sorted index arrays.
pub fn pair_json(p: Pair) -> [Vec<usize>; 2] {
    [p.left().indices(), p.right().indices()]
}
