//! Belief algebras: the `Gen` closure, axiom checking, backbones, supports,
//! completion and the `≤` lattice within a fixed backbone.
//!
//! A relation `≫ ⊆ R_W` is a belief algebra when
//!
//! * (A0) every pair is disjoint,
//! * (A1) `U ≫ ∅` iff `U ≠ ∅`,
//! * (A2) `U ≫ V` excludes `V ≫ U`,
//! * (A3) `U ≫ V`, `U₁ ⊇ U`, `V₁ ⊆ V`, `U₁ ∩ V₁ = ∅` give `U₁ ≫ V₁`,
//! * (A4) `U₁ ≫ V₁`, `U₂ ≫ V₂` with `U₁ ∪ V₁ = U₂ ∪ V₂` give `U₁ ∩ U₂ ≫ V₁ ∪ V₂`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Conflict, Error, Result};
use crate::world::{tr, Pair, Relation, Universe, World, WorldSet};

/// Dense membership bitmap over `R_W`, indexed by `(left << n) | right`.
struct Membership {
    n: u32,
    bits: Vec<u64>,
}

impl Membership {
    fn new(universe: Universe) -> Self {
        let n = universe.size() as u32;
        let slots = 1usize << (2 * n);
        Membership { n, bits: vec![0; slots.div_ceil(64)] }
    }

    fn of(rel: &Relation) -> Self {
        let mut m = Membership::new(rel.universe());
        for p in rel {
            m.insert(p.left().bits(), p.right().bits());
        }
        m
    }

    fn index(&self, left: u32, right: u32) -> usize {
        ((left as usize) << self.n) | right as usize
    }

    fn has(&self, left: u32, right: u32) -> bool {
        let i = self.index(left, right);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns `true` when newly inserted.
    fn insert(&mut self, left: u32, right: u32) -> bool {
        let i = self.index(left, right);
        let word = &mut self.bits[i / 64];
        let mask = 1u64 << (i % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }
}

/// Worklist closure under (A1), (A3) and (A4).
///
/// (A3) is generated by two elementary moves: add one outside world to the
/// left side, or drop one world from the right side. (A4) only combines pairs
/// with the same span `U ∪ V` and the result keeps that span, so left sides
/// are bucketed by span.
struct Closure {
    universe: Universe,
    member: Membership,
    by_span: Vec<Vec<u32>>,
    pairs: Vec<(u32, u32)>,
    queue: Vec<(u32, u32)>,
}

impl Closure {
    fn new(universe: Universe) -> Self {
        Closure {
            universe,
            member: Membership::new(universe),
            by_span: vec![Vec::new(); 1 << universe.size()],
            pairs: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn add(&mut self, left: u32, right: u32) {
        if self.member.insert(left, right) {
            self.by_span[(left | right) as usize].push(left);
            self.pairs.push((left, right));
            self.queue.push((left, right));
        }
    }

    fn run(mut self) -> Self {
        let n = self.universe.size();
        while let Some((left, right)) = self.queue.pop() {
            for w in 0..n {
                let bit = 1u32 << w;
                if (left | right) & bit == 0 {
                    self.add(left | bit, right);
                }
                if right & bit != 0 {
                    self.add(left, right & !bit);
                }
            }
            let span = left | right;
            let known = self.by_span[span as usize].len();
            for i in 0..known {
                let meet = left & self.by_span[span as usize][i];
                self.add(meet, span & !meet);
            }
        }
        self
    }

    /// First violation in canonical order, if any.
    /// A symmetric pair between nonempty sets if there is one, since that is
    /// what the input usually states; otherwise the empty-left pair with the
    /// largest right side.
    fn conflict(&self) -> Option<Conflict> {
        let mut sorted = self.pairs.clone();
        sorted.sort_unstable();
        let pair = |(l, r): (u32, u32)| Pair::new_unchecked(WorldSet(l), WorldSet(r));
        let symmetric = sorted.iter().find(|&&(l, r)| l != 0 && r != 0 && self.member.has(r, l));
        if let Some(&p) = symmetric {
            return Some(Conflict::Symmetric(pair(p)));
        }
        sorted.iter().rev().find(|&&(l, _)| l == 0).map(|&p| Conflict::EmptyLeft(pair(p)))
    }

    fn into_relation(self) -> Relation {
        let pairs: BTreeSet<Pair> = self
            .pairs
            .into_iter()
            .map(|(l, r)| Pair::new_unchecked(WorldSet(l), WorldSet(r)))
            .collect();
        Relation::from_sorted_unchecked(self.universe, pairs)
    }
}

/// `Gen(Ω)`: the least relation containing `Ω ∪ Tr(W)` closed under (A3) and
/// (A4). Fails with the canonically first violating pair when the closure
/// breaks (A2) or derives a pair with an empty left side.
pub fn gen(omega: &Relation) -> Result<BeliefAlgebra> {
    let universe = omega.universe();
    let mut closure = Closure::new(universe);
    for u in 1..(1u32 << universe.size()) {
        closure.add(u, 0);
    }
    for p in omega {
        closure.add(p.left().bits(), p.right().bits());
    }
    let closure = closure.run();
    if let Some(c) = closure.conflict() {
        return Err(Error::Conflict(c));
    }
    BeliefAlgebra::from_closed(closure.into_relation())
}

/// Breach of one axiom, with the pairs that triggered it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The axiom requires `required`, which is absent.
    Missing { required: Pair, premises: Vec<Pair> },
    /// The axiom forbids `pair`, which is present.
    Forbidden { pair: Pair, premises: Vec<Pair> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ps: &[Pair]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        match self {
            Violation::Missing { required, premises } if premises.is_empty() => write!(f, "missing {required}"),
            Violation::Missing { required, premises } => write!(f, "missing {required} (from {})", list(premises)),
            Violation::Forbidden { pair, premises } if premises.is_empty() => write!(f, "forbidden {pair}"),
            Violation::Forbidden { pair, premises } => write!(f, "forbidden {pair} (given {})", list(premises)),
        }
    }
}

/// Per-axiom outcome: `None` means the axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub a0: Option<Violation>,
    pub a1: Option<Violation>,
    pub a2: Option<Violation>,
    pub a3: Option<Violation>,
    pub a4: Option<Violation>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, v)| v.is_none())
    }

    pub fn entries(&self) -> [(&'static str, &Option<Violation>); 5] {
        [("A0", &self.a0), ("A1", &self.a1), ("A2", &self.a2), ("A3", &self.a3), ("A4", &self.a4)]
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .entries()
            .iter()
            .filter_map(|(name, v)| v.as_ref().map(|v| format!("{name}: {v}")))
            .collect();
        if failed.is_empty() {
            f.write_str("all axioms hold")
        } else {
            f.write_str(&failed.join("; "))
        }
    }
}

/// Checks (A0)–(A4) on an arbitrary relation, reporting the canonically first
/// witness for each failed axiom.
pub fn check_axioms(rel: &Relation) -> AxiomReport {
    let universe = rel.universe();
    let n = universe.size();
    let member = Membership::of(rel);
    let pair = |l: u32, r: u32| Pair::new_unchecked(WorldSet(l), WorldSet(r));
    let a1 = if member.has(0, 0) {
        Some(Violation::Forbidden { pair: pair(0, 0), premises: vec![] })
    } else {
        (1..(1u32 << n))
            .find(|u| !member.has(*u, 0))
            .map(|u| Violation::Missing { required: pair(u, 0), premises: vec![] })
    };

    let a2 = rel
        .iter()
        .find(|p| member.has(p.right().bits(), p.left().bits()))
        .map(|p| Violation::Forbidden { pair: p.reversed(), premises: vec![p] });

    let a3 = rel.iter().find_map(|p| {
        let (l, r) = (p.left().bits(), p.right().bits());
        (0..n).find_map(|w| {
            let bit = 1u32 << w;
            let grow = ((l | r) & bit == 0).then_some((l | bit, r));
            let shrink = (r & bit != 0).then_some((l, r & !bit));
            [grow, shrink]
                .into_iter()
                .flatten()
                .find(|(a, b)| !member.has(*a, *b))
                .map(|(a, b)| Violation::Missing { required: pair(a, b), premises: vec![p] })
        })
    });

    let mut by_span: Vec<Vec<Pair>> = vec![Vec::new(); 1 << n];
    for p in rel {
        by_span[p.span().bits() as usize].push(*p);
    }
    let a4 = rel.iter().find_map(|p| {
        let span = p.span().bits();
        by_span[span as usize].iter().find_map(|q| {
            let meet = p.left().bits() & q.left().bits();
            (!member.has(meet, span & !meet)).then(|| Violation::Missing {
                required: pair(meet, span & !meet),
                premises: vec![p, *q],
            })
        })
    });

    // Disjointness is enforced by `Pair::new`, so A0 cannot fail here.
    AxiomReport { a0: None, a1, a2, a3, a4 }
}

/// Ordered partition `U₁ ≫ … ≫ Uₙ` of `W`, most preferred cell first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Backbone {
    universe: Universe,
    cells: Vec<WorldSet>,
}

impl Backbone {
    /// Validates that `cells` are nonempty, pairwise disjoint and cover `W`.
    pub fn new(universe: Universe, cells: Vec<WorldSet>) -> Result<Self> {
        let mut seen = WorldSet::EMPTY;
        for c in &cells {
            universe.check(*c)?;
            if c.is_empty() || !c.is_disjoint(seen) {
                return Err(Error::Backbone(format!("cells {cells:?} do not partition W")));
            }
            seen = seen.union(*c);
        }
        if seen != universe.full() || cells.is_empty() {
            return Err(Error::Backbone(format!("cells {cells:?} do not cover W")));
        }
        Ok(Backbone { universe, cells })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn cells(&self) -> &[WorldSet] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Position of the cell holding `world`.
    pub fn level_of(&self, world: World) -> usize {
        self.cells.iter().position(|c| c.contains(world)).expect("backbone covers W")
    }

    /// Rank of every world: the index of its cell.
    pub fn ranks(&self) -> Vec<u32> {
        self.universe.worlds().map(|w| self.level_of(w) as u32).collect()
    }

    /// Index of `I(V)`, the earliest cell meeting `V`.
    pub fn support_level(&self, v: WorldSet) -> Result<usize> {
        if v.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(self.cells.iter().position(|c| !c.is_disjoint(v)).expect("backbone covers W"))
    }

    /// `I(V)`, the earliest cell meeting `V`.
    pub fn support(&self, v: WorldSet) -> Result<WorldSet> {
        Ok(self.cells[self.support_level(v)?])
    }

    /// Generators `(Uᵢ, Uᵢ₊₁ ∪ … ∪ Uₙ)` whose closure is the least algebra
    /// with this backbone.
    pub fn generators(&self) -> Relation {
        let mut below = self.universe.full();
        let mut pairs = BTreeSet::new();
        for c in &self.cells[..self.cells.len() - 1] {
            below = below.difference(*c);
            pairs.insert(Pair::new_unchecked(*c, below));
        }
        Relation::from_sorted_unchecked(self.universe, pairs)
    }

    pub fn label(&self) -> String {
        self.cells.iter().map(|c| format!("{{{}}}", c.label())).collect::<Vec<_>>().join(" ≫ ")
    }
}

impl fmt::Debug for Backbone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cells.join(" ≫ "))
    }
}

/// Extracts the backbone level by level: `Uᵢ = ⋂{U ⊆ Wᵢ | U ≫ Wᵢ∖U}`,
/// `Wᵢ₊₁ = Wᵢ ∖ Uᵢ`.
fn extract_backbone(rel: &Relation) -> Result<Backbone> {
    let universe = rel.universe();
    let mut remaining = universe.full();
    let mut cells = Vec::new();
    while !remaining.is_empty() {
        let cell = remaining
            .subsets()
            .filter(|u| rel.contains(&Pair::new_unchecked(*u, remaining.difference(*u))))
            .fold(remaining, WorldSet::intersection);
        if cell.is_empty() {
            return Err(Error::Backbone(format!(
                "empty intersection at level {} (remaining {remaining})",
                cells.len()
            )));
        }
        cells.push(cell);
        remaining = remaining.difference(cell);
    }
    if cells.is_empty() {
        // Empty universe: a single empty cell is the only sensible chain.
        cells.push(WorldSet::EMPTY);
    }
    Ok(Backbone { universe, cells })
}

/// A relation satisfying (A0)–(A4), with its backbone cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BeliefAlgebra {
    relation: Relation,
    backbone: Backbone,
}

impl BeliefAlgebra {
    /// Validates `relation` against every axiom.
    pub fn new(relation: Relation) -> Result<Self> {
        let report = check_axioms(&relation);
        if !report.all_pass() {
            return Err(Error::InvalidAlgebra(Box::new(report)));
        }
        Self::from_closed(relation)
    }

    /// For relations known to satisfy the axioms by construction.
    pub(crate) fn from_closed(relation: Relation) -> Result<Self> {
        let backbone = extract_backbone(&relation)?;
        Ok(BeliefAlgebra { relation, backbone })
    }

    /// `(2^W, Tr(W))`, the least belief algebra.
    pub fn trivial(universe: Universe) -> Self {
        let backbone = Backbone { universe, cells: vec![universe.full()] };
        BeliefAlgebra { relation: tr(universe), backbone }
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn into_relation(self) -> Relation {
        self.relation
    }

    pub fn backbone(&self) -> &Backbone {
        &self.backbone
    }

    pub fn universe(&self) -> Universe {
        self.relation.universe()
    }

    pub fn contains(&self, pair: &Pair) -> bool {
        self.relation.contains(pair)
    }

    /// `{ω} ≫ {ω'}`.
    pub fn prefers(&self, better: World, worse: World) -> bool {
        better != worse
            && self.contains(&Pair::new_unchecked(WorldSet::singleton(better), WorldSet::singleton(worse)))
    }

    pub fn is_subset(&self, other: &BeliefAlgebra) -> Result<bool> {
        self.relation.is_subset(&other.relation)
    }
}

impl fmt::Debug for BeliefAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BeliefAlgebra")
            .field("backbone", &self.backbone)
            .field("non_trivial", &self.relation.non_trivial().collect::<Vec<_>>())
            .finish()
    }
}

pub fn backbone(g: &BeliefAlgebra) -> &Backbone {
    g.backbone()
}

pub fn support(v: WorldSet, b: &Backbone) -> Result<WorldSet> {
    b.support(v)
}

/// `{(U, V) ∈ R_W | U, V ≠ ∅, min rank(U) < min rank(V)} ∪ Tr(W)`.
///
/// This is both the complete algebra of a total preorder (some world of `U`
/// beats every world of `V`) and the completion of an algebra whose backbone
/// levels are the ranks.
pub(crate) fn complete_from_ranks(universe: Universe, ranks: &[u32]) -> Relation {
    let full = universe.full();
    let min_rank: Vec<u32> = universe
        .subsets()
        .map(|s| s.worlds().map(|w| ranks[w.index()]).min().unwrap_or(u32::MAX))
        .collect();
    let mut pairs = BTreeSet::new();
    for left in universe.subsets().skip(1) {
        pairs.insert(Pair::new_unchecked(left, WorldSet::EMPTY));
        for right in full.difference(left).subsets().skip(1) {
            if min_rank[left.bits() as usize] < min_rank[right.bits() as usize] {
                pairs.insert(Pair::new_unchecked(left, right));
            }
        }
    }
    Relation::from_sorted_unchecked(universe, pairs)
}

/// `Com(G)`: the unique complete belief algebra containing `G` with the same
/// backbone.
pub fn com(g: &BeliefAlgebra) -> BeliefAlgebra {
    let relation = complete_from_ranks(g.universe(), &g.backbone.ranks());
    BeliefAlgebra { relation, backbone: g.backbone.clone() }
}

pub fn is_cba(g: &BeliefAlgebra) -> bool {
    // `G ⊆ Com(G)` always, so equal sizes mean equal sets.
    g.relation.len() == com(g).relation.len()
}

/// `G₁ ∩ G₂`, always a belief algebra.
pub fn meet(g1: &BeliefAlgebra, g2: &BeliefAlgebra) -> Result<BeliefAlgebra> {
    let relation = g1.relation.intersect(&g2.relation)?;
    debug_assert!(check_axioms(&relation).all_pass());
    BeliefAlgebra::from_closed(relation)
}

/// `Gen(G₁ ∪ G₂)` for two algebras sharing a backbone.
pub fn join(g1: &BeliefAlgebra, g2: &BeliefAlgebra) -> Result<BeliefAlgebra> {
    g1.universe().same_as(g2.universe())?;
    if g1.backbone != g2.backbone {
        return Err(Error::BackboneMismatch);
    }
    match gen(&g1.relation.union(&g2.relation)?) {
        Err(Error::Conflict(c)) => Err(Error::Internal(format!("join of equal-backbone algebras conflicted: {c}"))),
        other => other,
    }
}

/// `G₁ ≤ G₂`: same backbone and `G₁ ⊆ G₂`.
pub fn leq(g1: &BeliefAlgebra, g2: &BeliefAlgebra) -> bool {
    g1.universe() == g2.universe() && g1.backbone == g2.backbone && g1.relation.is_subset(&g2.relation).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::enumerate_r_w;

    fn w4() -> Universe {
        Universe::new(4).unwrap()
    }

    fn rel(universe: Universe, pairs: &[(&str, &str)]) -> Relation {
        Relation::from_pairs(universe, pairs.iter().map(|(l, r)| Pair::labeled(l, r))).unwrap()
    }

    fn with_tr(universe: Universe, pairs: &[(&str, &str)]) -> Relation {
        rel(universe, pairs).union(&tr(universe)).unwrap()
    }

    fn cells(b: &Backbone) -> Vec<String> {
        b.cells().iter().map(|c| c.label()).collect()
    }

    #[test]
    fn trivial_relation_is_an_algebra() {
        for n in 0..=5 {
            let u = Universe::new(n).unwrap();
            assert!(check_axioms(&tr(u)).all_pass(), "n = {n}");
            assert_eq!(gen(&Relation::empty(u)).unwrap(), BeliefAlgebra::trivial(u));
        }
    }

    #[test]
    fn closure_of_a_split_pair() {
        // Shrinking the right side also forces (12,3) and (12,4).
        let g = gen(&rel(w4(), &[("12", "34")])).unwrap();
        let expected = with_tr(w4(), &[("12", "34"), ("12", "3"), ("12", "4"), ("123", "4"), ("124", "3")]);
        assert_eq!(g.relation(), &expected);
    }

    #[test]
    fn closure_of_a_formula_pair() {
        let g = gen(&rel(w4(), &[("14", "23")])).unwrap();
        let expected = with_tr(w4(), &[("14", "23"), ("14", "2"), ("14", "3"), ("124", "3"), ("134", "2")]);
        assert_eq!(g.relation(), &expected);
        assert_eq!(cells(g.backbone()), ["14", "23"]);
        assert!(!is_cba(&g));
    }

    #[test]
    fn symmetric_generators_conflict() {
        match gen(&rel(w4(), &[("1", "2"), ("2", "1")])) {
            Err(Error::Conflict(c)) => assert!(matches!(c, Conflict::EmptyLeft(_) | Conflict::Symmetric(_))),
            other => panic!("expected conflict, got {other:?}"),
        }
        let u2 = Universe::new(2).unwrap();
        assert!(matches!(gen(&rel(u2, &[("1", "2"), ("2", "1")])), Err(Error::Conflict(_))));
    }

    #[test]
    fn empty_left_generator_conflicts() {
        let u = Universe::new(2).unwrap();
        let omega = Relation::from_pairs(u, [Pair::new(WorldSet::EMPTY, WorldSet::from_indices([0])).unwrap()]).unwrap();
        match gen(&omega) {
            Err(Error::Conflict(Conflict::EmptyLeft(p))) => assert!(p.left().is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn axiom_report_finds_missing_a3_consequence() {
        let r = with_tr(w4(), &[("12", "34")]);
        let report = check_axioms(&r);
        assert!(report.a0.is_none() && report.a1.is_none() && report.a2.is_none());
        match report.a3 {
            Some(Violation::Missing { required, premises }) => {
                assert_eq!(premises, vec![Pair::labeled("12", "34")]);
                assert!(Pair::labeled("12", "34").left().is_subset(required.left()));
                assert!(required.right().is_subset(Pair::labeled("12", "34").right()));
                assert!(!r.contains(&required));
            }
            other => panic!("unexpected {other:?}"),
        }
        // The three-pair listing without (12,3)/(12,4) still breaks A3.
        let partial = with_tr(w4(), &[("12", "34"), ("123", "4"), ("124", "3")]);
        assert!(check_axioms(&partial).a3.is_some());
        let closed = gen(&partial).unwrap();
        assert!(check_axioms(closed.relation()).all_pass());
    }

    #[test]
    fn axiom_report_flags_a1_a2_a4() {
        let u = Universe::new(3).unwrap();
        let mut missing_tr = tr(u).filter(|p| p.left().bits() != 0b101);
        let r = check_axioms(&missing_tr);
        assert_eq!(r.a1, Some(Violation::Missing { required: Pair::labeled("13", ""), premises: vec![] }));

        missing_tr.insert(Pair::new(WorldSet::EMPTY, WorldSet::EMPTY).unwrap()).unwrap();
        assert!(matches!(check_axioms(&missing_tr).a1, Some(Violation::Forbidden { .. })));

        let sym = with_tr(u, &[("1", "2"), ("2", "1")]);
        assert!(matches!(check_axioms(&sym).a2, Some(Violation::Forbidden { .. })));

        // (1,2) and (2,1)-free, A3-closed pairs over span 123 whose meet is missing.
        let a4 = gen(&rel(u, &[("12", "3")])).unwrap().relation().union(&gen(&rel(u, &[("13", "2")])).unwrap().relation().clone()).unwrap();
        match check_axioms(&a4).a4 {
            Some(Violation::Missing { required, .. }) => assert_eq!(required, Pair::labeled("1", "23")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn new_rejects_invalid_relations() {
        let r = with_tr(w4(), &[("12", "34")]);
        assert!(matches!(BeliefAlgebra::new(r), Err(Error::InvalidAlgebra(_))));
        let g = gen(&rel(w4(), &[("1", "3")])).unwrap();
        assert_eq!(BeliefAlgebra::new(g.relation().clone()).unwrap(), g);
    }

    #[test]
    fn backbones() {
        assert_eq!(cells(BeliefAlgebra::trivial(w4()).backbone()), ["1234"]);
        let g = gen(&rel(w4(), &[("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")])).unwrap();
        assert_eq!(cells(g.backbone()), ["12", "34"]);
        assert!(is_cba(&g));
    }

    #[test]
    fn supports() {
        let b = Backbone::new(
            w4(),
            vec![WorldSet::from_indices([0]), WorldSet::from_indices([1, 2]), WorldSet::from_indices([3])],
        )
        .unwrap();
        assert_eq!(b.support(w4().full()).unwrap(), WorldSet::from_indices([0]));
        assert_eq!(b.support(WorldSet::from_indices([2, 3])).unwrap(), WorldSet::from_indices([1, 2]));
        assert_eq!(b.support(WorldSet::from_indices([3])).unwrap(), WorldSet::from_indices([3]));
        assert!(matches!(b.support(WorldSet::EMPTY), Err(Error::EmptySupport)));
    }

    #[test]
    fn support_configuration_with_four_probes() {
        // Cells U1..U4; V1 touches U1, V2 starts in U2, V3 and V4 sit in the last cell.
        let u = Universe::new(6).unwrap();
        let b = Backbone::new(
            u,
            vec![
                WorldSet::from_indices([0]),
                WorldSet::from_indices([1]),
                WorldSet::from_indices([2]),
                WorldSet::from_indices([3, 4, 5]),
            ],
        )
        .unwrap();
        assert_eq!(b.support_level(WorldSet::from_indices([0, 3])).unwrap(), 0);
        assert_eq!(b.support_level(WorldSet::from_indices([1, 2, 5])).unwrap(), 1);
        assert_eq!(b.support_level(WorldSet::from_indices([3])).unwrap(), 3);
        assert_eq!(b.support_level(WorldSet::from_indices([4, 5])).unwrap(), 3);
    }

    #[test]
    fn backbone_validation() {
        let u = Universe::new(3).unwrap();
        assert!(Backbone::new(u, vec![WorldSet::from_indices([0, 1])]).is_err());
        assert!(Backbone::new(u, vec![WorldSet::from_indices([0, 1]), WorldSet::from_indices([1, 2])]).is_err());
        assert!(Backbone::new(u, vec![WorldSet::EMPTY, u.full()]).is_err());
        assert!(Backbone::new(u, vec![WorldSet::from_indices([2]), WorldSet::from_indices([0, 1])]).is_ok());
    }

    #[test]
    fn completion() {
        let g = gen(&rel(w4(), &[("14", "23")])).unwrap();
        let c = com(&g);
        let expected = gen(&rel(w4(), &[("1", "2"), ("1", "3"), ("4", "2"), ("4", "3")])).unwrap();
        assert_eq!(c, expected);
        assert!(is_cba(&c));
        assert_eq!(com(&c), c);
        let t = BeliefAlgebra::trivial(w4());
        assert_eq!(com(&t), t);
        assert!(is_cba(&t));
    }

    fn lattice() -> [BeliefAlgebra; 4] {
        let u = w4();
        [
            BeliefAlgebra::new(with_tr(u, &[("123", "4")])).unwrap(),
            BeliefAlgebra::new(with_tr(u, &[("123", "4"), ("12", "4")])).unwrap(),
            BeliefAlgebra::new(with_tr(u, &[("123", "4"), ("13", "4")])).unwrap(),
            BeliefAlgebra::new(with_tr(
                u,
                &[("123", "4"), ("12", "4"), ("13", "4"), ("23", "4"), ("1", "4"), ("2", "4"), ("3", "4")],
            ))
            .unwrap(),
        ]
    }

    #[test]
    fn lattice_order() {
        let [g1, g2, g3, g4] = lattice();
        for g in [&g1, &g2, &g3, &g4] {
            assert_eq!(cells(g.backbone()), ["123", "4"]);
            assert!(leq(g, g));
        }
        assert!(leq(&g1, &g2) && leq(&g1, &g3) && leq(&g2, &g4) && leq(&g3, &g4));
        assert!(!leq(&g2, &g3) && !leq(&g3, &g2));
        assert!(is_cba(&g4));
        assert_eq!(com(&g1), g4);
        assert_eq!(gen(&g1.backbone().generators()).unwrap(), g1);
    }

    #[test]
    fn meet_and_join() {
        let [g1, g2, g3, g4] = lattice();
        assert_eq!(meet(&g2, &g3).unwrap(), g1);
        assert_eq!(meet(&g2, &g2).unwrap(), g2);
        let t = BeliefAlgebra::trivial(w4());
        assert_eq!(meet(&g2, &t).unwrap(), t);

        let j = join(&g2, &g3).unwrap();
        assert_eq!(j, gen(&rel(w4(), &[("123", "4"), ("12", "4"), ("13", "4")])).unwrap());
        // The new pairs have different spans, so A4 adds nothing to the union.
        assert_eq!(j.relation(), &g2.relation().union(g3.relation()).unwrap());
        assert!(leq(&j, &g4));
        assert_eq!(join(&g2, &g2).unwrap(), g2);
        assert_eq!(join(&g1, &g4).unwrap(), g4);
        assert!(matches!(join(&g1, &t), Err(Error::BackboneMismatch)));
    }

    #[test]
    fn complete_relation_counts() {
        // A strict chain on two worlds: only ({0},{1}) beyond Tr.
        let u = Universe::new(2).unwrap();
        let c = complete_from_ranks(u, &[0, 1]);
        assert_eq!(c.non_trivial().collect::<Vec<_>>(), vec![Pair::labeled("1", "2")]);
        // Every pair of a complete relation is in R_W.
        let u3 = Universe::new(3).unwrap();
        assert!(complete_from_ranks(u3, &[2, 0, 1]).is_subset(&enumerate_r_w(u3)).unwrap());
    }
}
