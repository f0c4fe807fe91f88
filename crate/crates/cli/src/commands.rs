use std::cmp::Reverse;

use belief_algebra::algebra::{check_axioms, com, gen, is_cba, Violation};
use belief_algebra::logic::parse_formula;
use belief_algebra::oracle::{SampleConfig, Sampler};
use belief_algebra::preorder::revise_preorder;
use belief_algebra::revision::{
    check_postulates, evidence_from_conditional, formula_pair, revise, Check, PostulateReport,
};
use belief_algebra::{BeliefAlgebra, Pair, Relation};
use serde::Serialize;

use crate::document::{pair_json, Document, Frame};
use crate::Failure;

fn relation_output(frame: &Frame, g: &BeliefAlgebra, as_generators: bool) -> Document {
    if as_generators {
        Document::from_relation(frame, &greedy_generators(g))
    } else {
        Document::from_relation(frame, g.relation())
    }
}

pub fn cmd_gen(doc: &Document, max_worlds: usize, as_generators: bool) -> Result<Document, Failure> {
    let loaded = doc.load(max_worlds)?;
    Ok(relation_output(&loaded.frame, &loaded.algebra()?, as_generators))
}

pub fn cmd_backbone(doc: &Document, max_worlds: usize) -> Result<Document, Failure> {
    let loaded = doc.load(max_worlds)?;
    Ok(Document::from_levels(&loaded.frame, loaded.algebra()?.backbone().cells()))
}

pub fn cmd_com(doc: &Document, max_worlds: usize, as_generators: bool) -> Result<Document, Failure> {
    let loaded = doc.load(max_worlds)?;
    Ok(relation_output(&loaded.frame, &com(&loaded.algebra()?), as_generators))
}

/// Drops non-trivial pairs one at a time, larger pairs first, while the
/// closure of what remains still equals `g`. The result is minimal under
/// removal of single pairs, not necessarily the smallest generating set.
pub fn greedy_generators(g: &BeliefAlgebra) -> Relation {
    let universe = g.universe();
    let mut order: Vec<Pair> = g.relation().non_trivial().collect();
    order.sort_by_key(|p| (Reverse(p.span().len()), Reverse(p.left().len()), *p));
    let mut kept = g.relation().filter(|p| !p.is_trivial());
    for p in order {
        let without = kept.filter(|q| q != p);
        if gen(&without).is_ok_and(|h| &h == g) {
            kept = without;
        }
    }
    debug_assert_eq!(gen(&kept).ok().as_ref(), Some(g));
    debug_assert_eq!(kept.universe(), universe);
    kept
}

/// Where revision evidence comes from. All given sources are combined.
#[derive(Clone, Debug, Default)]
pub struct EvidenceSpec {
    pub document: Option<Document>,
    pub formulas: Vec<String>,
    pub conditionals: Vec<String>,
}

/// Splits `"beta|alpha"` at its one `|` outside parentheses.
pub fn split_conditional(text: &str) -> Result<(&str, &str), Failure> {
    let mut depth = 0i32;
    let mut bars = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' if depth == 0 => bars.push(i),
            _ => {}
        }
    }
    match bars.as_slice() {
        [i] => Ok((&text[..*i], &text[i + 1..])),
        _ => Err(Failure::input(format!(
            "conditional `{text}` needs exactly one top-level `|`; parenthesize disjunctions"
        ))),
    }
}

fn evidence_algebra(spec: &EvidenceSpec, frame: &Frame, max_worlds: usize) -> Result<BeliefAlgebra, Failure> {
    if spec.document.is_none() && spec.formulas.is_empty() && spec.conditionals.is_empty() {
        return Err(Failure::input("revise needs --evidence, --formula or --conditional"));
    }
    let mut rel = Relation::empty(frame.universe);
    let mut vocab_frame = frame.clone();
    if let Some(doc) = &spec.document {
        let loaded = doc.load(max_worlds)?;
        frame.compatible(&loaded.frame)?;
        if vocab_frame.vocab.is_none() {
            vocab_frame.vocab = loaded.frame.vocab.clone();
        }
        rel = loaded.relation();
    }
    if !spec.formulas.is_empty() || !spec.conditionals.is_empty() {
        let vocab = vocab_frame.vocab()?;
        for text in &spec.formulas {
            rel.insert(formula_pair(&parse_formula(text, vocab)?, vocab)?)?;
        }
        for text in &spec.conditionals {
            let (beta, alpha) = split_conditional(text)?;
            let pair = evidence_from_conditional(&parse_formula(alpha, vocab)?, &parse_formula(beta, vocab)?, vocab)?;
            rel.insert(pair)?;
        }
    }
    Ok(gen(&rel)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub com_current: Document,
    pub com_evidence: Document,
    pub lambda: Document,
    pub g_star: Document,
    pub g_star_backbone: Document,
    pub current_cap_g_star: Document,
    pub result_backbone: Document,
}

#[derive(Clone, Debug, Serialize)]
pub struct TracedRevision {
    pub result: Document,
    pub trace: Trace,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RevisionOutput {
    Plain(Document),
    Traced(Box<TracedRevision>),
}

impl RevisionOutput {
    pub fn result(&self) -> &Document {
        match self {
            RevisionOutput::Plain(d) => d,
            RevisionOutput::Traced(t) => &t.result,
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            RevisionOutput::Plain(d) => d.to_json(),
            RevisionOutput::Traced(t) => {
                let mut out = serde_json::to_string_pretty(t).expect("documents serialize");
                out.push('\n');
                out
            }
        }
    }
}

pub fn cmd_revise(
    current: &Document,
    evidence: &EvidenceSpec,
    max_worlds: usize,
    trace: bool,
    as_generators: bool,
) -> Result<RevisionOutput, Failure> {
    let loaded = current.load(max_worlds)?;
    let frame = &loaded.frame;
    let g1 = loaded.algebra()?;
    let g2 = evidence_algebra(evidence, frame, max_worlds)?;
    let t = revise(&g1, &g2)?;
    let result = relation_output(frame, &t.result, as_generators);
    if !trace {
        return Ok(RevisionOutput::Plain(result));
    }
    let rel = |r: &Relation| Document::from_relation(frame, r);
    Ok(RevisionOutput::Traced(Box::new(TracedRevision {
        result,
        trace: Trace {
            com_current: rel(t.com_g1.relation()),
            com_evidence: rel(t.com_g2.relation()),
            lambda: rel(&t.lambda),
            g_star: rel(t.g_star.relation()),
            g_star_backbone: Document::from_levels(frame, t.g_star.backbone().cells()),
            current_cap_g_star: rel(&t.g1_cap_gstar),
            result_backbone: Document::from_levels(frame, t.result.backbone().cells()),
        },
    })))
}

pub fn cmd_revise_preorder(p1: &Document, p2: &Document, max_worlds: usize) -> Result<Document, Failure> {
    let a = p1.load(max_worlds)?;
    let b = p2.load(max_worlds)?;
    a.frame.compatible(&b.frame)?;
    let p = revise_preorder(a.preorder()?, b.preorder()?)?;
    Ok(Document::from_preorder(&a.frame, &p))
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomLine {
    pub axiom: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing: Option<[Vec<usize>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<[Vec<usize>; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<[Vec<usize>; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PostulateTally {
    pub postulate: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FuzzFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub worlds: usize,
    pub witness: [Vec<usize>; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzSummary {
    pub trials: usize,
    pub seed: u64,
    pub postulates: Vec<PostulateTally>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<Vec<AxiomLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backbone: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuzz: Option<FuzzSummary>,
    pub passed: bool,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }

    pub fn failure_summary(&self) -> String {
        let mut failed: Vec<String> = Vec::new();
        for a in self.axioms.iter().flatten().filter(|a| !a.holds) {
            failed.push(a.axiom.to_string());
        }
        for t in self.fuzz.iter().flat_map(|f| &f.postulates).filter(|t| t.fail > 0) {
            failed.push(format!("{} ({} of {} trials)", t.postulate, t.fail, t.pass + t.fail + t.not_applicable));
        }
        format!("failed: {}", failed.join(", "))
    }
}

pub fn cmd_check(doc: Option<&Document>, fuzz: Option<(usize, u64)>, max_worlds: usize) -> Result<CheckReport, Failure> {
    let mut report = CheckReport { axioms: None, complete: None, backbone: None, fuzz: None, passed: true };
    if let Some(doc) = doc {
        let loaded = doc.load(max_worlds)?;
        let rel = loaded.relation();
        let axioms = check_axioms(&rel);
        report.passed &= axioms.all_pass();
        report.axioms = Some(
            axioms
                .entries()
                .iter()
                .map(|(name, v)| {
                    let mut line =
                        AxiomLine { axiom: name, holds: v.is_none(), missing: None, forbidden: None, premises: Vec::new() };
                    match v {
                        Some(Violation::Missing { required, premises }) => {
                            line.missing = Some(pair_json(*required));
                            line.premises = premises.iter().map(|p| pair_json(*p)).collect();
                        }
                        Some(Violation::Forbidden { pair, premises }) => {
                            line.forbidden = Some(pair_json(*pair));
                            line.premises = premises.iter().map(|p| pair_json(*p)).collect();
                        }
                        None => {}
                    }
                    line
                })
                .collect(),
        );
        if axioms.all_pass() {
            let g = BeliefAlgebra::new(rel)?;
            report.complete = Some(is_cba(&g));
            report.backbone = Some(g.backbone().cells().iter().map(|c| c.indices()).collect());
        }
    }
    if let Some((trials, seed)) = fuzz {
        let summary = fuzz_postulates(trials, seed, max_worlds)?;
        report.passed &= summary.postulates.iter().all(|t| t.fail == 0);
        report.fuzz = Some(summary);
    }
    Ok(report)
}

/// Largest universe fuzzing samples from.
const FUZZ_MAX_WORLDS: usize = 5;

/// Runs `trials` revisions of sampled algebras over 2 to 5 worlds and tallies
/// each postulate. Trial `i` uses its own stream seeded from `seed + i`.
pub fn fuzz_postulates(trials: usize, seed: u64, max_worlds: usize) -> Result<FuzzSummary, Failure> {
    let top = FUZZ_MAX_WORLDS.min(max_worlds).max(2);
    let names = ["RA1", "RA2", "RA3", "RA4", "RA5", "RA6"];
    let mut tallies: Vec<PostulateTally> = names
        .iter()
        .map(|&postulate| PostulateTally { postulate, pass: 0, fail: 0, not_applicable: 0, first_failure: None })
        .collect();
    for trial in 0..trials {
        let worlds = 2 + trial % (top - 1);
        let cfg = SampleConfig { universe_size: worlds, seed: seed.wrapping_add(trial as u64), trials: 1 };
        let mut s = Sampler::new(&cfg)?;
        let g1 = s.belief_algebra();
        let g2 = s.belief_algebra();
        let result = revise(&g1, &g2)?.result;
        let report: PostulateReport = check_postulates(&g1, &g2, &result)?;
        for (tally, (_, check)) in tallies.iter_mut().zip(report.entries()) {
            match check {
                Check::Pass => tally.pass += 1,
                Check::NotApplicable => tally.not_applicable += 1,
                Check::Fail(p) => {
                    tally.fail += 1;
                    tally
                        .first_failure
                        .get_or_insert(FuzzFailure { trial, worlds, witness: pair_json(*p) });
                }
            }
        }
    }
    Ok(FuzzSummary { trials, seed, postulates: tallies })
}
