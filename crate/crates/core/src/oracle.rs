//! Brute-force reference implementations and seeded instance generators.
//!
//! Nothing here shares closure or backbone code with [`crate::algebra`]: the
//! closure is recomputed round by round over plain `(u32, u32)` pairs, and
//! backbones are checked against every ordered partition of `W`.
//!
//! Random instances come from `ChaCha8Rng::seed_from_u64(seed)`, so a failing
//! seed replays exactly. The algebra sampler draws a subset `Ω` of a random
//! complete algebra and closes it; it reaches every belief algebra (each one
//! lies below its completion) but is not uniform over them.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{gen, BeliefAlgebra};
use crate::error::{Conflict, Result};
use crate::preorder::{cba_from_preorder, TotalPreorder};
use crate::world::{Pair, Relation, Universe, WorldSet};

/// Largest universe the exhaustive checks accept.
pub const EXHAUSTIVE_MAX_WORLDS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub universe_size: usize,
    pub seed: u64,
    pub trials: usize,
}

impl SampleConfig {
    pub fn universe(&self) -> Result<Universe> {
        Universe::new(self.universe_size)
    }
}

/// Round-based closure under (A1), (A3), (A4): every round rescans the whole
/// set against all of `R_W` and all pairs of pairs.
pub fn naive_gen(omega: &Relation) -> std::result::Result<Relation, Conflict> {
    let universe = omega.universe();
    assert!(universe.size() <= EXHAUSTIVE_MAX_WORLDS, "naive_gen is exhaustive; keep |W| <= 5");
    let full = (1u32 << universe.size()) - 1;

    let mut all_pairs = Vec::new();
    for u in 0..=full {
        for v in 0..=full {
            if u & v == 0 {
                all_pairs.push((u, v));
            }
        }
    }

    let mut current: BTreeSet<(u32, u32)> = omega.iter().map(|p| (p.left().bits(), p.right().bits())).collect();
    loop {
        let mut next = current.clone();
        for u in 1..=full {
            next.insert((u, 0));
        }
        for &(u, v) in &current {
            for &(u1, v1) in &all_pairs {
                if u1 & u == u && v1 & v == v1 {
                    next.insert((u1, v1));
                }
            }
        }
        for &(u1, v1) in &current {
            for &(u2, v2) in &current {
                if u1 | v1 == u2 | v2 {
                    next.insert((u1 & u2, v1 | v2));
                }
            }
        }
        if next == current {
            break;
        }
        current = next;
    }

    let as_pair = |(u, v): (u32, u32)| Pair::new(WorldSet(u), WorldSet(v)).expect("closure keeps pairs disjoint");
    if let Some(&p) = current.iter().find(|&&(u, v)| u != 0 && v != 0 && current.contains(&(v, u))) {
        return Err(Conflict::Symmetric(as_pair(p)));
    }
    if let Some(&p) = current.iter().rev().find(|&&(u, _)| u == 0) {
        return Err(Conflict::EmptyLeft(as_pair(p)));
    }
    Ok(Relation::from_pairs(universe, current.into_iter().map(as_pair)).expect("pairs lie in W"))
}

/// Checks the backbone of `g` against the chain conditions directly and
/// confirms no other ordered partition of `W` satisfies them.
///
/// A candidate `U₁ ≫ … ≫ Uₙ` qualifies when the cells partition `W`, each
/// `Uᵢ ≫ Uᵢ₊₁` holds, and no two disjoint nonempty subsets of one cell are
/// comparable.
pub fn verify_backbone_exhaustive(g: &BeliefAlgebra) -> bool {
    let universe = g.universe();
    assert!(universe.size() <= EXHAUSTIVE_MAX_WORLDS, "exhaustive check; keep |W| <= 5");
    let extracted: Vec<WorldSet> = g.backbone().cells().to_vec();
    if !is_chain(g.relation(), &extracted) {
        return false;
    }
    let qualifying = ordered_partitions(universe.size())
        .into_iter()
        .filter(|cells| is_chain(g.relation(), cells))
        .count();
    qualifying == 1
}

/// Whether `cells` satisfies the backbone conditions in `rel`.
pub fn is_chain(rel: &Relation, cells: &[WorldSet]) -> bool {
    let full = rel.universe().full();
    let mut seen = WorldSet::EMPTY;
    for c in cells {
        if c.is_empty() || !c.is_disjoint(seen) {
            return false;
        }
        seen = seen.union(*c);
    }
    if seen != full {
        return false;
    }
    let linked = cells
        .windows(2)
        .all(|w| rel.contains(&Pair::new(w[0], w[1]).expect("cells are disjoint")));
    let flat_inside = cells.iter().all(|c| {
        c.subsets().filter(|a| !a.is_empty()).all(|a| {
            c.difference(a)
                .subsets()
                .filter(|b| !b.is_empty())
                .all(|b| !rel.contains(&Pair::new(a, b).expect("disjoint by construction")))
        })
    });
    linked && flat_inside
}

/// Every ordered partition of `{0, .., n-1}` into nonempty cells.
pub fn ordered_partitions(n: usize) -> Vec<Vec<WorldSet>> {
    let mut out = Vec::new();
    let mut ranks = vec![0usize; n];
    loop {
        let k = ranks.iter().copied().max().map_or(0, |m| m + 1);
        if (0..k).all(|r| ranks.contains(&r)) {
            let mut cells = vec![WorldSet::EMPTY; k];
            for (w, r) in ranks.iter().enumerate() {
                cells[*r] = cells[*r].union(WorldSet::from_indices([w]));
            }
            out.push(cells);
        }
        // Odometer over {0..n-1}^n.
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            ranks[i] += 1;
            if ranks[i] < n {
                break;
            }
            ranks[i] = 0;
            i += 1;
        }
    }
}

/// Seeded source of random preorders and belief algebras.
pub struct Sampler {
    universe: Universe,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(cfg: &SampleConfig) -> Result<Self> {
        Ok(Sampler { universe: cfg.universe()?, rng: ChaCha8Rng::seed_from_u64(cfg.seed) })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// Random ranks in `0..=k` for a random `k < |W|`, then normalized.
    pub fn preorder(&mut self) -> TotalPreorder {
        let n = self.universe.size();
        let k = if n == 0 { 0 } else { self.rng.gen_range(0..n as u32) };
        self.preorder_with_max_level(k)
    }

    pub fn preorder_with_max_level(&mut self, k: u32) -> TotalPreorder {
        let ranks: Vec<u32> = (0..self.universe.size()).map(|_| self.rng.gen_range(0..=k)).collect();
        TotalPreorder::from_ranks(self.universe, &ranks).expect("one rank per world")
    }

    /// Random subset of the non-trivial pairs of `g`: either one to four
    /// pairs, or each pair independently with a random probability.
    pub fn subrelation(&mut self, g: &BeliefAlgebra) -> Relation {
        let pool: Vec<Pair> = g.relation().non_trivial().collect();
        let picked: Vec<Pair> = if self.rng.gen_bool(0.5) {
            let m = self.rng.gen_range(0..=4usize).min(pool.len());
            pool.choose_multiple(&mut self.rng, m).copied().collect()
        } else {
            let p: f64 = self.rng.gen_range(0.05..0.5);
            pool.iter().copied().filter(|_| self.rng.gen_bool(p)).collect()
        };
        Relation::from_pairs(self.universe, picked).expect("pairs come from the same universe")
    }

    /// A random complete algebra.
    pub fn complete_algebra(&mut self) -> BeliefAlgebra {
        let p = self.preorder();
        cba_from_preorder(&p)
    }

    /// `Gen(Ω)` for a random `Ω` below a random complete algebra.
    pub fn belief_algebra(&mut self) -> BeliefAlgebra {
        let c = self.complete_algebra();
        let omega = self.subrelation(&c);
        gen(&omega).expect("subsets of a belief algebra close without conflict")
    }

    /// A random algebra sharing the backbone of the complete algebra `c`:
    /// `Gen(Ω ∪ generators(Δ))` with `Ω ⊆ c`.
    pub fn algebra_below(&mut self, c: &BeliefAlgebra) -> BeliefAlgebra {
        let omega = self.subrelation(c).union(&c.backbone().generators()).expect("same universe");
        gen(&omega).expect("subsets of a belief algebra close without conflict")
    }
}

pub fn sample_preorder(cfg: &SampleConfig) -> Result<TotalPreorder> {
    Ok(Sampler::new(cfg)?.preorder())
}

pub fn sample_belief_algebra(cfg: &SampleConfig) -> Result<BeliefAlgebra> {
    Ok(Sampler::new(cfg)?.belief_algebra())
}
