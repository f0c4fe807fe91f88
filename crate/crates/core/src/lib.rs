//! Deterministic iterated belief revision over finite propositional worlds.
//!
//! Beliefs and evidence are *belief algebras*: relations `≫` on pairs of
//! disjoint world-sets, read "`U` is strictly more believable than `V`". The
//! crate computes closures ([`algebra::gen`]), backbones and completions, the
//! bijection with total preorders, and the unique revision operator
//! ([`revision::revise`]) that keeps the new evidence, stays below the
//! revision of the completions, and preserves as much of the old belief as
//! that bound allows.

pub mod algebra;
pub mod error;
pub mod logic;
pub mod oracle;
pub mod preorder;
pub mod revision;
pub mod world;

pub use algebra::{BeliefAlgebra, Backbone};
pub use error::{Conflict, Error, Result};
pub use logic::{Formula, Vocabulary};
pub use preorder::TotalPreorder;
pub use world::{Pair, Relation, Universe, World, WorldSet};
