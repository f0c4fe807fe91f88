//! The built-in scenario: two atoms `b`, `f`; the current belief ranks
//! `b∧f ∼ b∧¬f` above `¬b∧f ∼ ¬b∧¬f`; the evidence says `b ↔ f`.
//!
//! Every intermediate of the revision is printed with 1-based labels such as
//! `(14,23)` and 0-based index sets such as `({0,3},{1,2})`, then compared
//! with a reference set. A reference listing that omits pairs which its own
//! closure restores is reported as incomplete rather than as a mismatch.

use std::fmt::Write;

use belief_algebra::algebra::{com, gen};
use belief_algebra::logic::{models, parse_formula};
use belief_algebra::preorder::{cba_from_preorder, TotalPreorder};
use belief_algebra::revision::{evidence_from_conditional, formula_pair, lambda_set, revise};
use belief_algebra::world::tr;
use belief_algebra::{BeliefAlgebra, Pair, Relation, Universe, Vocabulary, WorldSet};

use crate::Variant;

type Listing = &'static [(&'static str, &'static str)];

const CURRENT_LEVELS: [&str; 2] = ["12", "34"];
const CURRENT_GENERATORS: Listing = &[("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")];
const CURRENT: Listing = &[
    ("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"), ("12", "3"), ("12", "4"), ("12", "34"),
    ("13", "4"), ("14", "3"), ("23", "4"), ("24", "3"), ("123", "4"), ("124", "3"),
];
const EVIDENCE: Listing = &[("14", "23"), ("14", "2"), ("14", "3"), ("142", "3"), ("143", "2")];
const EVIDENCE_BACKBONE: [&str; 2] = ["14", "23"];
const COM_EVIDENCE: Listing = &[
    ("1", "2"), ("1", "3"), ("4", "2"), ("4", "3"), ("14", "23"), ("14", "2"), ("14", "3"),
    ("12", "3"), ("13", "2"), ("24", "3"), ("34", "2"), ("142", "3"), ("143", "2"),
];
const COM_EVIDENCE_GENERATORS: Listing = &[("1", "2"), ("1", "3"), ("4", "2"), ("4", "3")];
const LAMBDA: Listing = &[("1", "4"), ("2", "3")];
const G_STAR: Listing = &[
    ("1", "4"), ("1", "2"), ("1", "3"), ("4", "2"), ("4", "3"), ("2", "3"), ("1", "24"),
    ("1", "23"), ("1", "34"), ("1", "234"), ("4", "23"), ("14", "2"), ("14", "3"), ("14", "23"),
    ("13", "4"), ("13", "2"), ("13", "24"), ("12", "3"), ("12", "4"), ("12", "34"), ("42", "3"),
    ("43", "2"), ("123", "4"), ("124", "3"), ("134", "2"),
];
const G_STAR_BACKBONE: [&str; 4] = ["1", "4", "2", "3"];
const CURRENT_CAP_G_STAR: Listing = &[
    ("1", "3"), ("1", "4"), ("2", "3"), ("12", "3"), ("12", "4"), ("12", "34"), ("13", "4"),
    ("14", "3"), ("24", "3"), ("123", "4"), ("124", "3"),
];
const RESULT: Listing = &[
    ("1", "2"), ("1", "3"), ("1", "4"), ("2", "3"), ("1", "23"), ("1", "24"), ("1", "34"),
    ("1", "234"), ("12", "3"), ("12", "4"), ("12", "34"), ("13", "2"), ("13", "4"), ("13", "24"),
    ("14", "2"), ("14", "3"), ("14", "23"), ("24", "3"), ("123", "4"), ("124", "3"),
];
const RESULT_BACKBONE: [&str; 3] = ["1", "24", "3"];
const RESULT_GENERATORS: Listing = &[("1", "4"), ("1", "2"), ("1", "3"), ("2", "3")];
const CONDITIONAL_RESULT_CHAIN: [&str; 4] = ["1", "4", "2", "3"];

const EVIDENCE_FORMULA: &str = "b <-> f";
/// `(¬b | ¬f)`: given `¬f`, believe `¬b`.
const CONDITIONAL: (&str, &str) = ("!b", "!f");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exact,
    /// The reference omits `omitted`, all of which its closure restores.
    ListingIncomplete { omitted: Vec<Pair> },
    Mismatch { extra: Vec<Pair>, missing: Vec<Pair> },
}

impl Verdict {
    pub fn consistent(&self) -> bool {
        !matches!(self, Verdict::Mismatch { .. })
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub name: &'static str,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub text: String,
    pub steps: Vec<Step>,
    pub consistent: bool,
}

fn universe() -> Universe {
    Universe::new(4).expect("4 worlds")
}

fn listing(pairs: Listing) -> Relation {
    Relation::from_pairs(universe(), pairs.iter().map(|(l, r)| Pair::labeled(l, r))).expect("4 worlds")
}

fn set(digits: &str) -> WorldSet {
    Pair::labeled(digits, "").left()
}

fn with_tr(r: &Relation) -> Relation {
    r.union(&tr(r.universe())).expect("same universe")
}

fn zero_based(s: WorldSet) -> String {
    let items: Vec<String> = s.indices().iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn omega_set(s: WorldSet) -> String {
    let items: Vec<String> = s.indices().iter().map(|i| format!("ω{}", i + 1)).collect();
    format!("{{{}}}", items.join(","))
}

fn labels(pairs: &[Pair]) -> String {
    pairs.iter().map(|p| p.label()).collect::<Vec<_>>().join(" ")
}

/// Compares a computed algebra's relation with a listing read as `listing ∪ Tr(W)`.
fn against_listing(computed: &Relation, reference: &Relation, closed: bool) -> Verdict {
    let reference = if closed { with_tr(reference) } else { reference.clone() };
    if computed == &reference {
        return Verdict::Exact;
    }
    let extra: Vec<Pair> = computed.iter().filter(|p| !reference.contains(p)).collect();
    let missing: Vec<Pair> = reference.iter().filter(|p| !computed.contains(p)).collect();
    let restores = closed && missing.is_empty() && gen(&reference).is_ok_and(|g| g.relation() == computed);
    if restores {
        Verdict::ListingIncomplete { omitted: extra }
    } else {
        Verdict::Mismatch { extra, missing }
    }
}

fn against_equal(computed: &Relation, other: &Relation) -> Verdict {
    if computed == other {
        Verdict::Exact
    } else {
        let extra = computed.iter().filter(|p| !other.contains(p)).collect();
        let missing = other.iter().filter(|p| !computed.contains(p)).collect();
        Verdict::Mismatch { extra, missing }
    }
}

fn against_backbone(computed: &BeliefAlgebra, cells: &[&str]) -> Verdict {
    let expected: Vec<WorldSet> = cells.iter().map(|c| set(c)).collect();
    if computed.backbone().cells() == expected.as_slice() {
        Verdict::Exact
    } else {
        Verdict::Mismatch { extra: Vec::new(), missing: Vec::new() }
    }
}

/// Chain generators `(Uᵢ, Uᵢ₊₁ ∪ … ∪ Uₙ)` for cells given as 1-based digits.
fn chain(cells: &[&str]) -> Relation {
    let sets: Vec<WorldSet> = cells.iter().map(|c| set(c)).collect();
    let pairs = (0..sets.len().saturating_sub(1)).map(|i| {
        let rest = sets[i + 1..].iter().fold(WorldSet::EMPTY, |a, s| a.union(*s));
        Pair::new(sets[i], rest).expect("cells are disjoint")
    });
    Relation::from_pairs(universe(), pairs).expect("4 worlds")
}

struct Writer {
    text: String,
    steps: Vec<Step>,
}

impl Writer {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn relation(&mut self, title: &str, rel: &Relation, implied_tr: bool) {
        let pairs: Vec<Pair> = rel.non_trivial().collect();
        let suffix = if implied_tr { " ∪ Tr(W)" } else { "" };
        self.line(format!("{title} ({} non-trivial pairs{suffix})", pairs.len()));
        for chunk in pairs.chunks(8) {
            self.line(format!("  1-based: {}", labels(chunk)));
        }
        for chunk in pairs.chunks(6) {
            let items: Vec<String> = chunk
                .iter()
                .map(|p| format!("({},{})", zero_based(p.left()), zero_based(p.right())))
                .collect();
            self.line(format!("  0-based: {}", items.join(" ")));
        }
    }

    fn backbone(&mut self, title: &str, g: &BeliefAlgebra) {
        let cells = g.backbone().cells();
        let one: Vec<String> = cells.iter().map(|c| omega_set(*c)).collect();
        let zero: Vec<String> = cells.iter().map(|c| zero_based(*c)).collect();
        self.line(format!("{title}: {}   0-based: {}", one.join(" ≫ "), zero.join(" ≫ ")));
    }

    fn verdict(&mut self, name: &'static str, verdict: Verdict) {
        let text = match &verdict {
            Verdict::Exact => "exact".to_string(),
            Verdict::ListingIncomplete { omitted } => {
                format!("listing incomplete, Gen(listing) = computed; listing omits {}", labels(omitted))
            }
            Verdict::Mismatch { extra, missing } => {
                format!("MISMATCH; computed only: [{}]; reference only: [{}]", labels(extra), labels(missing))
            }
        };
        self.line(format!("  check {name}: {text}"));
        self.steps.push(Step { name, verdict });
    }
}

pub fn run(variant: Variant) -> DemoReport {
    let vocab = Vocabulary::new(&["b", "f"]).expect("two atoms");
    let u = vocab.universe();
    let mut w = Writer { text: String::new(), steps: Vec::new() };

    w.line("worlds over atoms b, f");
    for world in u.worlds() {
        w.line(format!("  ω{} = index {}: {}", world.0 + 1, world.0, vocab.describe(world)));
    }
    w.line("pairs print 1-based as (14,23) = ({ω1,ω4},{ω2,ω3}) and 0-based as ({0,3},{1,2})");
    w.line("");

    let p1 = TotalPreorder::from_levels(u, &CURRENT_LEVELS.map(set)).expect("valid levels");
    let g1 = cba_from_preorder(&p1);
    w.line(format!("current belief: {}", p1.label()));
    w.relation("G1", g1.relation(), true);
    w.verdict("G1 vs reference listing", against_listing(g1.relation(), &listing(CURRENT), true));
    let g1_gen = gen(&listing(CURRENT_GENERATORS)).expect("consistent");
    w.verdict("G1 = Gen({(1,3),(1,4),(2,3),(2,4)})", against_equal(g1.relation(), g1_gen.relation()));
    w.backbone("backbone of G1", &g1);
    w.line("");

    let mu = parse_formula(EVIDENCE_FORMULA, &vocab).expect("valid formula");
    let mu_pair = formula_pair(&mu, &vocab).expect("satisfiable");
    w.line(format!(
        "evidence μ = {EVIDENCE_FORMULA}: [μ] = {} = 0-based {}",
        omega_set(models(&mu, &vocab)),
        zero_based(models(&mu, &vocab))
    ));
    let mut evidence_pairs = vec![mu_pair];
    if variant == Variant::Conditional {
        let (beta, alpha) = CONDITIONAL;
        let beta_f = parse_formula(beta, &vocab).expect("valid formula");
        let alpha_f = parse_formula(alpha, &vocab).expect("valid formula");
        let cond = evidence_from_conditional(&alpha_f, &beta_f, &vocab).expect("satisfiable");
        w.line(format!("conditional ({beta} | {alpha}) gives {}", cond.label()));
        evidence_pairs.push(cond);
    }
    let g2 = gen(&Relation::from_pairs(u, evidence_pairs).expect("4 worlds")).expect("consistent evidence");
    w.relation("G2", g2.relation(), true);
    if variant == Variant::Formula {
        w.verdict("G2 vs reference listing", against_listing(g2.relation(), &listing(EVIDENCE), true));
    }
    w.backbone("backbone of G2", &g2);
    if variant == Variant::Formula {
        w.verdict("backbone of G2", against_backbone(&g2, &EVIDENCE_BACKBONE));
    }
    w.line("");

    let trace = revise(&g1, &g2).expect("revision of consistent inputs");
    w.relation("Com(G1)", trace.com_g1.relation(), true);
    w.verdict("Com(G1) = G1", against_equal(trace.com_g1.relation(), g1.relation()));
    w.relation("Com(G2)", trace.com_g2.relation(), true);
    if variant == Variant::Formula {
        w.verdict("Com(G2) vs reference listing", against_listing(trace.com_g2.relation(), &listing(COM_EVIDENCE), true));
        let com_gen = gen(&listing(COM_EVIDENCE_GENERATORS)).expect("consistent");
        w.verdict(
            "Com(G2) = Gen({(1,2),(1,3),(4,2),(4,3)})",
            against_equal(com(&g2).relation(), com_gen.relation()),
        );
    }
    w.line("");

    let lambda = lambda_set(&trace.com_g1, &trace.com_g2).expect("complete inputs");
    w.relation("Λ(Com(G1), Com(G2))", &lambda, false);
    if variant == Variant::Formula {
        w.verdict("Λ", against_listing(&lambda, &listing(LAMBDA), false));
    }
    w.relation("G* = Com(G1) • Com(G2)", trace.g_star.relation(), true);
    w.backbone("backbone of G*", &trace.g_star);
    if variant == Variant::Formula {
        w.verdict("G* vs reference listing", against_listing(trace.g_star.relation(), &listing(G_STAR), true));
        w.verdict("backbone of G*", against_backbone(&trace.g_star, &G_STAR_BACKBONE));
    }
    w.relation("G1 ∩ G*", &trace.g1_cap_gstar, true);
    if variant == Variant::Formula {
        w.verdict(
            "G1 ∩ G* vs reference listing",
            against_listing(&trace.g1_cap_gstar, &listing(CURRENT_CAP_G_STAR), true),
        );
    }
    w.line("");

    let result = &trace.result;
    w.relation("G1 • G2 = Gen((G1 ∩ G*) ∪ G2)", result.relation(), true);
    w.backbone("backbone of G1 • G2", result);
    match variant {
        Variant::Formula => {
            w.verdict("G1 • G2 vs reference listing", against_listing(result.relation(), &listing(RESULT), true));
            w.verdict("backbone of G1 • G2", against_backbone(result, &RESULT_BACKBONE));
            let by_pairs = gen(&listing(RESULT_GENERATORS)).expect("consistent");
            w.verdict("G1 • G2 = Gen({(1,4),(1,2),(1,3),(2,3)})", against_equal(result.relation(), by_pairs.relation()));
            let mut backbone_plus = chain(&RESULT_BACKBONE);
            backbone_plus.insert(Pair::labeled("2", "3")).expect("4 worlds");
            let by_backbone = gen(&backbone_plus).expect("consistent");
            w.verdict("G1 • G2 = Gen(Δ ∪ {(2,3)})", against_equal(result.relation(), by_backbone.relation()));
        }
        Variant::Conditional => {
            let strict = gen(&chain(&CONDITIONAL_RESULT_CHAIN)).expect("consistent");
            w.verdict("G1 • G2 = Gen(ω1 ≫ ω4 ≫ ω2 ≫ ω3)", against_equal(result.relation(), strict.relation()));
        }
    }

    let consistent = w.steps.iter().all(|s| s.verdict.consistent());
    let mismatches = w.steps.iter().filter(|s| !s.verdict.consistent()).count();
    let incomplete = w.steps.iter().filter(|s| matches!(s.verdict, Verdict::ListingIncomplete { .. })).count();
    w.line("");
    let _ = writeln!(
        w.text,
        "summary: {} checks, {} exact, {incomplete} incomplete listings, {mismatches} mismatches",
        w.steps.len(),
        w.steps.len() - incomplete - mismatches
    );
    DemoReport { text: w.text, steps: w.steps, consistent }
}
