//! Total preorders on worlds and their complete belief algebras.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{complete_from_ranks, is_cba, BeliefAlgebra};
use crate::error::{Error, Result};
use crate::world::{Universe, World, WorldSet};

/// A total preorder given by normalized ranks: lower rank is strictly more
/// plausible, and the used ranks are exactly `0..=k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TotalPreorder {
    universe: Universe,
    ranks: Vec<u32>,
}

impl TotalPreorder {
    /// Builds from arbitrary ranks, one per world, then normalizes them.
    pub fn from_ranks(universe: Universe, ranks: &[u32]) -> Result<Self> {
        if ranks.len() != universe.size() {
            return Err(Error::InvalidPreorder(format!(
                "{} ranks for {} worlds",
                ranks.len(),
                universe.size()
            )));
        }
        Ok(TotalPreorder { universe, ranks: normalize(ranks) })
    }

    /// Builds from levels, most plausible first. Every world must appear in
    /// exactly one level and levels must be nonempty.
    pub fn from_levels(universe: Universe, levels: &[WorldSet]) -> Result<Self> {
        let mut ranks = vec![u32::MAX; universe.size()];
        for (i, level) in levels.iter().enumerate() {
            universe.check(*level)?;
            if level.is_empty() {
                return Err(Error::InvalidPreorder(format!("level {i} is empty")));
            }
            for w in level.worlds() {
                if ranks[w.index()] != u32::MAX {
                    return Err(Error::InvalidPreorder(format!("world {} appears twice", w.0)));
                }
                ranks[w.index()] = i as u32;
            }
        }
        if let Some(w) = ranks.iter().position(|r| *r == u32::MAX) {
            return Err(Error::InvalidPreorder(format!("world {w} has no level")));
        }
        Ok(TotalPreorder { universe, ranks })
    }

    /// All worlds equally plausible.
    pub fn flat(universe: Universe) -> Self {
        TotalPreorder { universe, ranks: vec![0; universe.size()] }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn rank(&self, w: World) -> u32 {
        self.ranks[w.index()]
    }

    /// `ω ≺ ω'`.
    pub fn strictly_before(&self, a: World, b: World) -> bool {
        self.rank(a) < self.rank(b)
    }

    /// `ω ∼ ω'`.
    pub fn equivalent(&self, a: World, b: World) -> bool {
        self.rank(a) == self.rank(b)
    }

    pub fn level_count(&self) -> usize {
        self.ranks.iter().max().map_or(0, |m| *m as usize + 1)
    }

    /// Levels as world-sets, most plausible first.
    pub fn levels(&self) -> Vec<WorldSet> {
        let mut levels = vec![WorldSet::EMPTY; self.level_count()];
        for w in self.universe.worlds() {
            let l = &mut levels[self.rank(w) as usize];
            *l = l.union(WorldSet::singleton(w));
        }
        levels
    }

    /// The strict part `≺` as `(better, worse)` world pairs.
    pub fn strict_part(&self) -> Vec<(World, World)> {
        let worlds: Vec<World> = self.universe.worlds().collect();
        let mut out = Vec::new();
        for &a in &worlds {
            for &b in &worlds {
                if self.strictly_before(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let levels = self.levels();
        levels
            .iter()
            .map(|l| l.worlds().map(|w| format!("ω{}", w.0 + 1)).collect::<Vec<_>>().join("∼"))
            .collect::<Vec<_>>()
            .join("≺")
    }
}

impl fmt::Debug for TotalPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn normalize(ranks: &[u32]) -> Vec<u32> {
    let dense: BTreeMap<u32, u32> = {
        let mut used: Vec<u32> = ranks.to_vec();
        used.sort_unstable();
        used.dedup();
        used.into_iter().enumerate().map(|(i, r)| (r, i as u32)).collect()
    };
    ranks.iter().map(|r| dense[r]).collect()
}

/// The complete belief algebra of `p`: `U ≫ V` iff some world of `U` is
/// strictly more plausible than every world of `V`.
pub fn cba_from_preorder(p: &TotalPreorder) -> BeliefAlgebra {
    let relation = complete_from_ranks(p.universe, &p.ranks);
    BeliefAlgebra::from_closed(relation).expect("complete relations have a backbone")
}

/// Inverse of [`cba_from_preorder`]: `ω ≺ ω'` iff `{ω} ≫ {ω'}`.
pub fn preorder_from_cba(g: &BeliefAlgebra) -> Result<TotalPreorder> {
    if !is_cba(g) {
        return Err(Error::NotComplete("argument"));
    }
    let universe = g.universe();
    // The number of strictly better worlds grows with the level; normalizing
    // those counts recovers the levels.
    let beaten_by: Vec<u32> = universe
        .worlds()
        .map(|w| universe.worlds().filter(|v| g.prefers(*v, w)).count() as u32)
        .collect();
    TotalPreorder::from_ranks(universe, &beaten_by)
}

/// Lexicographic refinement: `ω ≺ ω'` iff `ω ≺₂ ω'`, or `ω ∼₂ ω'` and
/// `ω ≺₁ ω'`.
pub fn revise_preorder(current: &TotalPreorder, evidence: &TotalPreorder) -> Result<TotalPreorder> {
    current.universe.same_as(evidence.universe)?;
    let mut worlds: Vec<World> = current.universe.worlds().collect();
    let key = |w: &World| (evidence.rank(*w), current.rank(*w));
    worlds.sort_by_key(key);
    let mut ranks = vec![0u32; worlds.len()];
    let mut level = 0u32;
    for (i, w) in worlds.iter().enumerate() {
        if i > 0 && key(&worlds[i - 1]) != key(w) {
            level += 1;
        }
        ranks[w.index()] = level;
    }
    Ok(TotalPreorder { universe: current.universe, ranks })
}
