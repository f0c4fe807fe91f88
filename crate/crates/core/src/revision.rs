//! The revision operator on belief algebras.
//!
//! Revising `G₁` by new evidence `G₂` goes through the completions:
//!
//! 1. `Com(G₁)`, `Com(G₂)`;
//! 2. `G* = Com(G₁) • Com(G₂) = Gen(Λ ∪ Com(G₂))`, where `Λ` keeps the
//!    singleton preferences of the old belief between worlds the evidence
//!    cannot tell apart;
//! 3. `G₁ ∩ G*`, computed with supports: `(U, V) ∈ G₁` survives iff
//!    `I*(U)` strictly precedes `I*(V)` in the backbone of `G*`;
//! 4. `G₁ • G₂ = Gen((G₁ ∩ G*) ∪ G₂)`.
//!
//! The same result is `Gen((G₁ ∪ G₂) ∩ G*)`; [`revise_direct`] computes that
//! form so the two can be compared.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{com, gen, is_cba, BeliefAlgebra};
use crate::error::{Error, Result};
use crate::logic::{models, Formula, Vocabulary};
use crate::world::{Pair, Relation, Universe, WorldSet};

/// Every intermediate of one revision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevisionTrace {
    pub com_g1: BeliefAlgebra,
    pub com_g2: BeliefAlgebra,
    pub lambda: Relation,
    pub g_star: BeliefAlgebra,
    pub g1_cap_gstar: Relation,
    pub result: BeliefAlgebra,
}

/// `Λ(G₁, G₂) = {({ω}, {ω'}) | {ω} ≫₁ {ω'}, I₂({ω}) = I₂({ω'})}` for complete
/// `G₁` and `G₂`.
pub fn lambda_set(g1: &BeliefAlgebra, g2: &BeliefAlgebra) -> Result<Relation> {
    require_complete(g1, g2)?;
    let universe = g1.universe();
    let cells = g2.backbone();
    let mut lambda = Relation::empty(universe);
    for a in universe.worlds() {
        for b in universe.worlds() {
            if a != b && cells.level_of(a) == cells.level_of(b) && g1.prefers(a, b) {
                lambda.insert(Pair::new_unchecked(WorldSet::singleton(a), WorldSet::singleton(b)))?;
            }
        }
    }
    Ok(lambda)
}

fn require_complete(g1: &BeliefAlgebra, g2: &BeliefAlgebra) -> Result<()> {
    g1.universe().same_as(g2.universe())?;
    if !is_cba(g1) {
        return Err(Error::NotComplete("current belief"));
    }
    if !is_cba(g2) {
        return Err(Error::NotComplete("evidence"));
    }
    Ok(())
}

/// `G₁ • G₂ = Gen(Λ(G₁, G₂) ∪ G₂)` for complete algebras.
pub fn revise_cba(g1: &BeliefAlgebra, g2: &BeliefAlgebra) -> Result<BeliefAlgebra> {
    let lambda = lambda_set(g1, g2)?;
    gen(&lambda.union(g2.relation())?).map_err(|e| match e {
        Error::Conflict(c) => Error::Internal(format!("revision of complete algebras conflicted: {c}")),
        other => other,
    })
}

/// Revises `g1` by `g2`, returning every intermediate.
pub fn revise(g1: &BeliefAlgebra, g2: &BeliefAlgebra) -> Result<RevisionTrace> {
    g1.universe().same_as(g2.universe())?;
    let com_g1 = com(g1);
    let com_g2 = com(g2);
    let lambda = lambda_set(&com_g1, &com_g2)?;
    let g_star = revise_cba(&com_g1, &com_g2)?;

    let star = g_star.backbone();
    let precedes = |p: Pair| match (star.support_level(p.left()), star.support_level(p.right())) {
        (Ok(a), Ok(b)) => a < b,
        _ => false,
    };
    let g1_cap_gstar = g1.relation().filter(|p| p.is_trivial() || precedes(p));
    let result = gen(&g1_cap_gstar.union(g2.relation())?)?;

    debug_assert_eq!(revise_direct(g1, g2, &g_star).ok().as_ref(), Some(&result));
    Ok(RevisionTrace { com_g1, com_g2, lambda, g_star, g1_cap_gstar, result })
}

/// `Gen((G₁ ∪ G₂) ∩ G*)`, the closed form of the revision result.
pub fn revise_direct(g1: &BeliefAlgebra, g2: &BeliefAlgebra, g_star: &BeliefAlgebra) -> Result<BeliefAlgebra> {
    let omega = g1.relation().union(g2.relation())?.intersect(g_star.relation())?;
    gen(&omega)
}

/// `([μ], [¬μ])`. Fails when `μ` has no models.
pub fn formula_pair(mu: &Formula, vocab: &Vocabulary) -> Result<Pair> {
    let sat = models(mu, vocab);
    if sat.is_empty() {
        return Err(Error::Contradiction);
    }
    Pair::new(sat, vocab.universe().full().difference(sat))
}

/// `Gen({([μ], [¬μ])})`; a tautology yields the trivial algebra.
pub fn evidence_from_formula(mu: &Formula, vocab: &Vocabulary) -> Result<BeliefAlgebra> {
    let pair = formula_pair(mu, vocab)?;
    evidence_combine(vocab.universe(), &[pair])
}

/// The preference `([α ∧ β], [α ∧ ¬β])` induced by the conditional belief
/// "`β` given `α`".
pub fn evidence_from_conditional(alpha: &Formula, beta: &Formula, vocab: &Vocabulary) -> Result<Pair> {
    let holds = models(&Formula::and(alpha.clone(), beta.clone()), vocab);
    if holds.is_empty() {
        return Err(Error::UnsatisfiableConditional);
    }
    let fails = models(&Formula::and(alpha.clone(), Formula::not(beta.clone())), vocab);
    Pair::new(holds, fails)
}

/// `Gen` of a list of evidence pairs.
pub fn evidence_combine(universe: Universe, pairs: &[Pair]) -> Result<BeliefAlgebra> {
    gen(&Relation::from_pairs(universe, pairs.iter().copied())?)
}

/// Outcome of one postulate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    /// Fails, with a pair that shows it.
    Fail(Pair),
    /// The postulate only constrains complete inputs.
    NotApplicable,
}

impl Check {
    pub fn is_ok(&self) -> bool {
        !matches!(self, Check::Fail(_))
    }

    fn from_witness(witness: Option<Pair>) -> Self {
        witness.map_or(Check::Pass, Check::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostulateReport {
    /// `G₂ ⊆ G₃`.
    pub ra1: Check,
    /// `G₃ = Gen(G₃ ∩ (G₁ ∪ G₂))`.
    pub ra2: Check,
    /// Complete inputs give a complete result.
    pub ra3: Check,
    /// Complete inputs: worlds in one evidence cell keep their old order.
    pub ra4: Check,
    /// `G₃ ⊆ Com(G₁) • Com(G₂)`.
    pub ra5_upper_bound: Check,
    /// No `Gen(Ω)` with `Ω ⊆ (G₁ ∪ G₂) ∩ G*` strictly above `G₃`.
    pub ra6: Check,
}

impl PostulateReport {
    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, c)| c.is_ok())
    }

    pub fn entries(&self) -> [(&'static str, &Check); 6] {
        [
            ("RA1", &self.ra1),
            ("RA2", &self.ra2),
            ("RA3", &self.ra3),
            ("RA4", &self.ra4),
            ("RA5", &self.ra5_upper_bound),
            ("RA6", &self.ra6),
        ]
    }
}

/// Number of random sub-candidates tried for RA6 beyond the maximal one.
const RA6_SUBCANDIDATES: usize = 8;
const RA6_SEED: u64 = 0x0052_4136;

/// Checks whether `g3` is an acceptable revision of `g1` by `g2`.
pub fn check_postulates(g1: &BeliefAlgebra, g2: &BeliefAlgebra, g3: &BeliefAlgebra) -> Result<PostulateReport> {
    g1.universe().same_as(g2.universe())?;
    g1.universe().same_as(g3.universe())?;
    let first_missing = |sub: &Relation, sup: &Relation| sub.iter().find(|p| !sup.contains(p));

    let ra1 = Check::from_witness(first_missing(g2.relation(), g3.relation()));

    let union = g1.relation().union(g2.relation())?;
    let regenerated = gen(&g3.relation().intersect(&union)?)?;
    let ra2 = Check::from_witness(first_missing(g3.relation(), regenerated.relation()));

    let complete_inputs = is_cba(g1) && is_cba(g2);
    let ra3 = if complete_inputs {
        Check::from_witness(first_missing(com(g3).relation(), g3.relation()))
    } else {
        Check::NotApplicable
    };
    let ra4 = if complete_inputs {
        let universe = g1.universe();
        let cells = g2.backbone();
        let witness = universe
            .worlds()
            .flat_map(|a| universe.worlds().map(move |b| (a, b)))
            .filter(|(a, b)| a != b && cells.level_of(*a) == cells.level_of(*b))
            .find(|(a, b)| g3.prefers(*a, *b) != g1.prefers(*a, *b))
            .map(|(a, b)| Pair::new_unchecked(WorldSet::singleton(a), WorldSet::singleton(b)));
        Check::from_witness(witness)
    } else {
        Check::NotApplicable
    };

    let g_star = revise_cba(&com(g1), &com(g2))?;
    let ra5_upper_bound = Check::from_witness(first_missing(g3.relation(), g_star.relation()));

    let candidates = union.intersect(g_star.relation())?;
    let mut ra6 = ra6_violation(&candidates, g3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(RA6_SEED);
    let pool: Vec<Pair> = candidates.iter().collect();
    for _ in 0..RA6_SUBCANDIDATES {
        if ra6.is_some() {
            break;
        }
        let keep: f64 = rng.gen_range(0.3..1.0);
        let omega = Relation::from_pairs(g1.universe(), pool.iter().copied().filter(|_| rng.gen_bool(keep)))?;
        ra6 = ra6_violation(&omega, g3)?;
    }

    Ok(PostulateReport { ra1, ra2, ra3, ra4, ra5_upper_bound, ra6: Check::from_witness(ra6) })
}

/// A pair of `Gen(Ω) ∖ G₃` when `G₃ ⊊ Gen(Ω)`.
fn ra6_violation(omega: &Relation, g3: &BeliefAlgebra) -> Result<Option<Pair>> {
    let generated = gen(omega)?;
    if g3.relation().is_subset(generated.relation())? {
        Ok(generated.relation().iter().find(|p| !g3.contains(p)))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::leq;
    use crate::preorder::{cba_from_preorder, TotalPreorder};
    use crate::world::tr;

    fn w4() -> Universe {
        Universe::new(4).unwrap()
    }

    fn rel(pairs: &[(&str, &str)]) -> Relation {
        Relation::from_pairs(w4(), pairs.iter().map(|(l, r)| Pair::labeled(l, r))).unwrap()
    }

    fn ranks(r: &[u32]) -> BeliefAlgebra {
        cba_from_preorder(&TotalPreorder::from_ranks(w4(), r).unwrap())
    }

    fn cells(g: &BeliefAlgebra) -> Vec<String> {
        g.backbone().cells().iter().map(|c| c.label()).collect()
    }

    fn bf() -> Vocabulary {
        Vocabulary::new(&["b", "f"]).unwrap()
    }

    #[test]
    fn lambda_of_chain_against_three_cells() {
        let g1 = ranks(&[0, 1, 2, 3]);
        let g2 = gen(&rel(&[("2", "13"), ("13", "4"), ("1", "4"), ("3", "4")])).unwrap();
        assert!(is_cba(&g2));
        assert_eq!(cells(&g2), ["2", "13", "4"]);
        assert_eq!(lambda_set(&g1, &g2).unwrap(), rel(&[("1", "3")]));
        let out = revise_cba(&g1, &g2).unwrap();
        assert_eq!(cells(&out), ["2", "1", "3", "4"]);
        assert!(is_cba(&out));
    }

    #[test]
    fn lambda_is_empty_against_strict_chains() {
        let g1 = ranks(&[0, 0, 1, 1]);
        assert!(lambda_set(&g1, &ranks(&[3, 2, 1, 0])).unwrap().is_empty());
    }

    #[test]
    fn lambda_requires_complete_inputs() {
        let g = gen(&rel(&[("14", "23")])).unwrap();
        assert!(matches!(lambda_set(&g, &ranks(&[0, 0, 0, 0])), Err(Error::NotComplete("current belief"))));
        assert!(matches!(revise_cba(&ranks(&[0, 0, 0, 0]), &g), Err(Error::NotComplete("evidence"))));
    }

    #[test]
    fn revise_by_trivial_keeps_belief() {
        let t = BeliefAlgebra::trivial(w4());
        for g in [ranks(&[0, 0, 1, 1]), gen(&rel(&[("14", "23")])).unwrap(), gen(&rel(&[("2", "3")])).unwrap()] {
            assert_eq!(revise(&g, &t).unwrap().result, g);
            assert_eq!(revise(&t, &g).unwrap().result, g);
            if is_cba(&g) {
                assert_eq!(revise_cba(&g, &t).unwrap(), g);
            }
        }
    }

    #[test]
    fn support_test_matches_plain_intersection() {
        let g1 = gen(&rel(&[("1", "3"), ("24", "3")])).unwrap();
        let g2 = gen(&rel(&[("3", "1")])).unwrap();
        let trace = revise(&g1, &g2).unwrap();
        assert_eq!(trace.g1_cap_gstar, g1.relation().intersect(trace.g_star.relation()).unwrap());
        assert_eq!(revise_direct(&g1, &g2, &trace.g_star).unwrap(), trace.result);
        assert!(trace.result.relation().is_subset(trace.g_star.relation()).unwrap());
    }

    #[test]
    fn formula_evidence() {
        let v = bf();
        let mu = crate::logic::parse_formula("(b & f) | (!b & !f)", &v).unwrap();
        let g = evidence_from_formula(&mu, &v).unwrap();
        assert_eq!(g, gen(&rel(&[("14", "23")])).unwrap());
        let taut = crate::logic::parse_formula("b | !b", &v).unwrap();
        assert_eq!(evidence_from_formula(&taut, &v).unwrap(), BeliefAlgebra::trivial(w4()));
        let contra = crate::logic::parse_formula("b & !b", &v).unwrap();
        assert!(matches!(evidence_from_formula(&contra, &v), Err(Error::Contradiction)));
    }

    #[test]
    fn conditional_evidence() {
        let v = bf();
        let p = |s| crate::logic::parse_formula(s, &v).unwrap();
        assert_eq!(evidence_from_conditional(&p("!f"), &p("!b"), &v).unwrap(), Pair::labeled("4", "2"));
        assert_eq!(evidence_from_conditional(&p("T"), &p("b & f"), &v).unwrap(), Pair::labeled("1", "234"));
        let vacuous = evidence_from_conditional(&p("b"), &p("b | f"), &v).unwrap();
        assert_eq!(vacuous, Pair::labeled("12", ""));
        assert!(tr(w4()).contains(&vacuous));
        assert!(matches!(
            evidence_from_conditional(&p("b"), &p("!b"), &v),
            Err(Error::UnsatisfiableConditional)
        ));
    }

    #[test]
    fn combine() {
        assert_eq!(evidence_combine(w4(), &[]).unwrap(), BeliefAlgebra::trivial(w4()));
        let (a, b) = (Pair::labeled("1", "2"), Pair::labeled("2", "1"));
        assert!(matches!(evidence_combine(w4(), &[a, b]), Err(Error::Conflict(_))));
    }

    #[test]
    fn postulates_accept_the_operator_and_reject_tampering() {
        let g1 = ranks(&[0, 0, 1, 1]);
        let g2 = gen(&rel(&[("14", "23")])).unwrap();
        let trace = revise(&g1, &g2).unwrap();
        let report = check_postulates(&g1, &g2, &trace.result).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.ra3, Check::NotApplicable);

        let t = BeliefAlgebra::trivial(w4());
        let report = check_postulates(&g1, &g2, &t).unwrap();
        assert!(matches!(report.ra1, Check::Fail(p) if g2.contains(&p) && !t.contains(&p)));

        // Add a pair only the upper bound knows about.
        let extra = trace.g_star.relation().iter().find(|p| !trace.result.contains(p)).unwrap();
        let mut bigger = trace.result.relation().clone();
        bigger.insert(extra).unwrap();
        let tampered = gen(&bigger).unwrap();
        let report = check_postulates(&g1, &g2, &tampered).unwrap();
        assert!(matches!(report.ra2, Check::Fail(_)), "{report:?}");
    }

    #[test]
    fn postulates_on_complete_inputs() {
        let g1 = ranks(&[0, 1, 2, 3]);
        let g2 = ranks(&[1, 0, 1, 2]);
        let out = revise(&g1, &g2).unwrap().result;
        let report = check_postulates(&g1, &g2, &out).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.ra3, Check::Pass);
        // Reversing the order inside the evidence's middle cell breaks RA4.
        let wrong = ranks(&[2, 0, 1, 3]);
        assert!(matches!(check_postulates(&g1, &g2, &wrong).unwrap().ra4, Check::Fail(_)));
        // An incomplete algebra below the true result breaks RA3 and RA6.
        let weaker = gen(&rel(&[("2", "13"), ("13", "4")])).unwrap();
        assert!(!is_cba(&weaker) && weaker.is_subset(&out).unwrap());
        let report = check_postulates(&g1, &g2, &weaker).unwrap();
        assert!(matches!(report.ra3, Check::Fail(_)), "{report:?}");
        assert!(matches!(report.ra6, Check::Fail(_)), "{report:?}");
    }

    #[test]
    fn monotone_in_the_lattice_order() {
        let g1 = gen(&rel(&[("12", "34")])).unwrap();
        let g1_big = com(&g1);
        assert!(leq(&g1, &g1_big));
        let g2 = gen(&rel(&[("14", "23")])).unwrap();
        let g2_big = com(&g2);
        let small = revise(&g1, &g2).unwrap().result;
        let big = revise(&g1_big, &g2_big).unwrap().result;
        assert!(small.is_subset(&big).unwrap());
    }
}
