//! Worlds, world-sets, disjoint pairs and relations over `2^W`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of worlds a closure may run over.
pub const DEFAULT_MAX_WORLDS: usize = 10;

/// Hard ceiling for any cap override. The closure keeps a dense membership
/// bitmap of `4^n` bits.
pub const HARD_MAX_WORLDS: usize = 14;

/// A finite world universe `W = {0, .., size - 1}`, validated against a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universe(u8);

impl Universe {
    /// Universe of `size` worlds under the default cap.
    pub fn new(size: usize) -> Result<Self> {
        Self::with_limit(size, DEFAULT_MAX_WORLDS)
    }

    pub fn with_limit(size: usize, limit: usize) -> Result<Self> {
        let limit = limit.min(HARD_MAX_WORLDS);
        if size > limit {
            return Err(Error::UniverseTooLarge { size, limit });
        }
        Ok(Universe(size as u8))
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// The full world-set `W`.
    pub fn full(self) -> WorldSet {
        WorldSet(((1u64 << self.0) - 1) as u32)
    }

    pub fn worlds(self) -> impl Iterator<Item = World> {
        (0..self.0 as u32).map(World)
    }

    /// Every subset of `W`, in increasing bit-vector order.
    pub fn subsets(self) -> impl Iterator<Item = WorldSet> {
        (0..(1u32 << self.0)).map(WorldSet)
    }

    pub fn contains(self, set: WorldSet) -> bool {
        set.0 & !self.full().0 == 0
    }

    pub(crate) fn check(self, set: WorldSet) -> Result<()> {
        if self.contains(set) {
            Ok(())
        } else {
            Err(Error::OutOfUniverse { set, size: self.size() })
        }
    }

    pub(crate) fn same_as(self, other: Universe) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::UniverseMismatch { left: self.size(), right: other.size() })
        }
    }
}

/// A single world, identified by its 0-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World(pub u32);

impl World {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of the world universe, stored as a bit-vector (bit `i` = world `i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(pub u32);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn singleton(world: World) -> Self {
        WorldSet(1 << world.0)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        WorldSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, world: World) -> bool {
        self.0 >> world.0 & 1 == 1
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 | other.0)
    }

    pub fn intersection(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & other.0)
    }

    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: WorldSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn worlds(self) -> impl Iterator<Item = World> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1).map(World)
    }

    pub fn indices(self) -> Vec<usize> {
        self.worlds().map(World::index).collect()
    }

    /// All subsets of this set, including `∅` and the set itself.
    pub fn subsets(self) -> impl Iterator<Item = WorldSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(WorldSet(cur))
        })
    }

    /// 1-based digit label, e.g. `{0, 3}` -> `"14"`.
    pub fn label(self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        self.worlds()
            .map(|w| (w.0 + 1).to_string())
            .collect::<Vec<_>>()
            .join(if self.worlds().any(|w| w.0 >= 9) { "." } else { "" })
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.worlds().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", w.0)?;
        }
        f.write_str("}")
    }
}

/// An ordered pair `(U, V)` of disjoint world-sets: "`U` is more believable than `V`".
///
/// Ordering is by `(left, right)` as unsigned bit-vectors, which is the
/// canonical order used for iteration and serialization.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    left: WorldSet,
    right: WorldSet,
}

impl Pair {
    pub fn new(left: WorldSet, right: WorldSet) -> Result<Self> {
        if !left.is_disjoint(right) {
            return Err(Error::NotDisjoint { left, right });
        }
        Ok(Pair { left, right })
    }

    /// Callers guarantee disjointness.
    pub(crate) fn new_unchecked(left: WorldSet, right: WorldSet) -> Self {
        debug_assert!(left.is_disjoint(right));
        Pair { left, right }
    }

    /// Shorthand using 1-based digit labels, e.g. `Pair::labeled("12", "34")`.
    ///
    /// Panics on malformed labels or overlapping sides; meant for fixtures.
    pub fn labeled(left: &str, right: &str) -> Self {
        let parse = |s: &str| {
            WorldSet::from_indices(s.chars().map(|c| {
                c.to_digit(10).filter(|d| *d >= 1).expect("label digits are 1..=9") as usize - 1
            }))
        };
        Pair::new(parse(left), parse(right)).expect("labeled pair sides overlap")
    }

    pub fn left(self) -> WorldSet {
        self.left
    }

    pub fn right(self) -> WorldSet {
        self.right
    }

    /// `U ∪ V`.
    pub fn span(self) -> WorldSet {
        self.left.union(self.right)
    }

    pub fn is_trivial(self) -> bool {
        self.right.is_empty() && !self.left.is_empty()
    }

    pub fn reversed(self) -> Pair {
        Pair { left: self.right, right: self.left }
    }

    pub fn label(self) -> String {
        format!("({},{})", self.left.label(), self.right.label())
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// A finite set of pairs over `2^W`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    universe: Universe,
    pairs: BTreeSet<Pair>,
}

impl Relation {
    pub fn empty(universe: Universe) -> Self {
        Relation { universe, pairs: BTreeSet::new() }
    }

    pub fn from_pairs<I: IntoIterator<Item = Pair>>(universe: Universe, pairs: I) -> Result<Self> {
        let mut rel = Relation::empty(universe);
        for p in pairs {
            rel.insert(p)?;
        }
        Ok(rel)
    }

    pub(crate) fn from_sorted_unchecked(universe: Universe, pairs: BTreeSet<Pair>) -> Self {
        Relation { universe, pairs }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn insert(&mut self, pair: Pair) -> Result<bool> {
        self.universe.check(pair.left)?;
        self.universe.check(pair.right)?;
        Ok(self.pairs.insert(pair))
    }

    pub fn contains(&self, pair: &Pair) -> bool {
        self.pairs.contains(pair)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }

    /// Pairs outside `Tr(W)`, in canonical order.
    pub fn non_trivial(&self) -> impl Iterator<Item = Pair> + '_ {
        self.iter().filter(|p| !p.is_trivial())
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.universe.same_as(other.universe)?;
        Ok(self.pairs.is_subset(&other.pairs))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.universe.same_as(other.universe)?;
        Ok(Relation {
            universe: self.universe,
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        self.universe.same_as(other.universe)?;
        Ok(Relation {
            universe: self.universe,
            pairs: self.pairs.intersection(&other.pairs).copied().collect(),
        })
    }

    /// Pairs of `self` missing from `other`.
    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.universe.same_as(other.universe)?;
        Ok(Relation {
            universe: self.universe,
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        })
    }

    pub fn filter(&self, mut keep: impl FnMut(Pair) -> bool) -> Relation {
        Relation {
            universe: self.universe,
            pairs: self.pairs.iter().copied().filter(|p| keep(*p)).collect(),
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a Relation {
    type Item = &'a Pair;
    type IntoIter = std::collections::btree_set::Iter<'a, Pair>;

    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}

/// All `3^|W|` ordered disjoint pairs `R_W`, including pairs with empty sides.
pub fn enumerate_r_w(universe: Universe) -> Relation {
    let mut pairs = BTreeSet::new();
    for left in universe.subsets() {
        for right in universe.full().difference(left).subsets() {
            pairs.insert(Pair::new_unchecked(left, right));
        }
    }
    Relation::from_sorted_unchecked(universe, pairs)
}

/// `Tr(W) = {(U, ∅) | U ≠ ∅}`.
pub fn tr(universe: Universe) -> Relation {
    let pairs = universe
        .subsets()
        .filter(|u| !u.is_empty())
        .map(|u| Pair::new_unchecked(u, WorldSet::EMPTY))
        .collect();
    Relation::from_sorted_unchecked(universe, pairs)
}
