use belief_algebra::algebra::{check_axioms, com, gen, is_cba, join, leq, meet};
use belief_algebra::oracle::{is_chain, naive_gen, verify_backbone_exhaustive, SampleConfig, Sampler};
use belief_algebra::preorder::{cba_from_preorder, preorder_from_cba, revise_preorder};
use belief_algebra::revision::{check_postulates, revise, revise_cba, revise_direct};
use belief_algebra::world::tr;
use belief_algebra::{BeliefAlgebra, Error, Pair, Relation, Universe, WorldSet};
use proptest::prelude::*;

fn sampler(n: usize, seed: u64) -> Sampler {
    Sampler::new(&SampleConfig { universe_size: n, seed, trials: 1 }).unwrap()
}

fn subset(a: &Relation, b: &Relation) -> bool {
    a.is_subset(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fast_closure_matches_naive(n in 1usize..=5, seed in any::<u64>()) {
        let mut s = sampler(n, seed);
        let c = s.complete_algebra();
        let omega = s.subrelation(&c);
        prop_assert_eq!(gen(&omega).unwrap().into_relation(), naive_gen(&omega).unwrap());
    }

    #[test]
    fn arbitrary_inputs_match_naive(n in 1usize..=4, raw in prop::collection::vec((any::<u32>(), any::<u32>()), 0..4)) {
        let u = Universe::new(n).unwrap();
        let mask = u.full().bits();
        let pairs = raw.into_iter().map(|(l, r)| {
            let (l, r) = (l & mask, r & mask & !l);
            Pair::new(WorldSet(l), WorldSet(r)).unwrap()
        });
        let omega = Relation::from_pairs(u, pairs).unwrap();
        match (gen(&omega), naive_gen(&omega)) {
            (Ok(g), Ok(r)) => prop_assert_eq!(g.into_relation(), r),
            (Err(Error::Conflict(a)), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "fast {:?} vs naive {:?}", a.map(|g| g.relation().len()), b),
        }
    }

    #[test]
    fn closure_laws(n in 1usize..=5, seed in any::<u64>()) {
        let mut s = sampler(n, seed);
        let c = s.complete_algebra();
        let big = s.subrelation(&c);
        let small = big.filter(|p| (p.left().bits() ^ p.right().bits()) % 2 == 0);
        let g = gen(&big).unwrap();
        prop_assert!(subset(&big, g.relation()));
        prop_assert_eq!(&gen(g.relation()).unwrap(), &g);
        prop_assert!(subset(gen(&small).unwrap().relation(), g.relation()));
        // Least: any algebra holding Ω holds Gen(Ω).
        prop_assert!(subset(g.relation(), c.relation()));
        prop_assert!(check_axioms(g.relation()).all_pass());
    }

    #[test]
    fn backbone_structure(n in 1usize..=4, seed in any::<u64>()) {
        let g = sampler(n, seed).belief_algebra();
        prop_assert!(verify_backbone_exhaustive(&g));
        prop_assert!(is_chain(g.relation(), g.backbone().cells()));
    }

    #[test]
    fn support_consistency(n in 1usize..=5, seed in any::<u64>()) {
        let g = sampler(n, seed).belief_algebra();
        let b = g.backbone();
        for p in g.relation().non_trivial() {
            prop_assert!(b.support_level(p.left()).unwrap() < b.support_level(p.right()).unwrap(), "{}", p.label());
        }
    }

    #[test]
    fn completion(n in 1usize..=5, seed in any::<u64>()) {
        let g = sampler(n, seed).belief_algebra();
        let c = com(&g);
        prop_assert!(subset(g.relation(), c.relation()));
        prop_assert_eq!(c.backbone(), g.backbone());
        prop_assert!(is_cba(&c));
        prop_assert_eq!(&com(&c), &c);
        prop_assert_eq!(is_cba(&g), g == c);
    }

    #[test]
    fn same_backbone_lattice(n in 1usize..=5, seed in any::<u64>()) {
        let mut s = sampler(n, seed);
        let c = s.complete_algebra();
        let a = s.algebra_below(&c);
        let b = s.algebra_below(&c);
        prop_assert_eq!(a.backbone(), c.backbone());
        let lo = meet(&a, &b).unwrap();
        let hi = join(&a, &b).unwrap();
        prop_assert_eq!(lo.backbone(), c.backbone());
        prop_assert_eq!(hi.backbone(), c.backbone());
        prop_assert!(leq(&lo, &a) && leq(&lo, &b) && leq(&a, &hi) && leq(&b, &hi) && leq(&hi, &c));
        let bottom = gen(&c.backbone().generators()).unwrap();
        prop_assert!(leq(&bottom, &lo));
    }

    #[test]
    fn preorder_bijection(n in 1usize..=5, seed in any::<u64>()) {
        let mut s = sampler(n, seed);
        let p = s.preorder();
        let g = cba_from_preorder(&p);
        prop_assert!(is_cba(&g));
        prop_assert_eq!(&preorder_from_cba(&g).unwrap(), &p);
        prop_assert_eq!(g.backbone().cells().to_vec(), p.levels());
    }

    #[test]
    fn lexicographic_refinement(n in 1usize..=5, seed in any::<u64>()) {
        let mut s = sampler(n, seed);
        let p1 = s.preorder();
        let p2 = s.preorder();
        let p3 = revise_preorder(&p1, &p2).unwrap();
        for a in p1.universe().worlds() {
            for b in p1.universe().worlds() {
                if p2.strictly_before(a, b) {
                    prop_assert!(p3.strictly_before(a, b));
                }
                if p2.equivalent(a, b) {
                    prop_assert_eq!(p3.strictly_before(a, b), p1.strictly_before(a, b));
                }
            }
        }
        // The complete-algebra operator agrees with the preorder operator.
        let via_algebra = revise_cba(&cba_from_preorder(&p1), &cba_from_preorder(&p2)).unwrap();
        prop_assert_eq!(&via_algebra, &cba_from_preorder(&p3));
        let trace = revise(&cba_from_preorder(&p1), &cba_from_preorder(&p2)).unwrap();
        prop_assert_eq!(&trace.result, &via_algebra);
    }

    #[test]
    fn revision_invariants(n in 1usize..=5, seed in any::<u64>()) {
        let mut s = sampler(n, seed);
        let g1 = s.belief_algebra();
        let g2 = s.belief_algebra();
        let t = revise(&g1, &g2).unwrap();
        prop_assert!(subset(g2.relation(), t.result.relation()));
        prop_assert!(subset(t.result.relation(), t.g_star.relation()));
        prop_assert_eq!(&t.g_star, &revise_cba(&com(&g1), &com(&g2)).unwrap());
        prop_assert_eq!(&revise_direct(&g1, &g2, &t.g_star).unwrap(), &t.result);
        prop_assert_eq!(&revise(&g1, &g2).unwrap().result, &t.result);
        prop_assert!(check_postulates(&g1, &g2, &t.result).unwrap().all_pass());
    }

    #[test]
    fn identity_revisions(n in 1usize..=5, seed in any::<u64>()) {
        let g = sampler(n, seed).belief_algebra();
        let trivial = BeliefAlgebra::trivial(g.universe());
        prop_assert_eq!(&revise(&g, &trivial).unwrap().result, &g);
        prop_assert_eq!(&revise(&trivial, &g).unwrap().result, &g);
        prop_assert_eq!(&revise(&g, &g).unwrap().result, &g);
    }

    #[test]
    fn monotone_in_both_arguments(n in 1usize..=5, seed in any::<u64>()) {
        let mut s = sampler(n, seed);
        let c1 = s.complete_algebra();
        let c2 = s.complete_algebra();
        let g1 = s.algebra_below(&c1);
        let g2 = s.algebra_below(&c2);
        let g1_up = join(&g1, &s.algebra_below(&c1)).unwrap();
        let g2_up = join(&g2, &s.algebra_below(&c2)).unwrap();
        let lo = revise(&g1, &g2).unwrap().result;
        let hi = revise(&g1_up, &g2_up).unwrap().result;
        prop_assert!(subset(lo.relation(), hi.relation()));
    }
}

#[test]
fn trivial_relation_closes_to_itself() {
    for n in 0..=6 {
        let u = belief_algebra::Universe::new(n).unwrap();
        assert_eq!(gen(&Relation::empty(u)).unwrap().relation(), &tr(u));
    }
}
