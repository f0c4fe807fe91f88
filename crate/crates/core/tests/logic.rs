use belief_algebra::logic::{models, parse_formula};
use belief_algebra::{Formula, Vocabulary};
use proptest::prelude::*;

fn vocab() -> Vocabulary {
    Vocabulary::new(&["a", "b", "c"]).unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::True), Just(Formula::False), (0usize..3).prop_map(Formula::Atom)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::Implies(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::Iff(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #[test]
    fn models_respect_connectives(f in formula(), g in formula()) {
        let v = vocab();
        let full = v.universe().full();
        let (mf, mg) = (models(&f, &v), models(&g, &v));
        prop_assert_eq!(models(&Formula::Not(Box::new(f.clone())), &v), full.difference(mf));
        prop_assert_eq!(models(&Formula::And(Box::new(f.clone()), Box::new(g.clone())), &v), mf.intersection(mg));
        prop_assert_eq!(models(&Formula::Or(Box::new(f.clone()), Box::new(g.clone())), &v), mf.union(mg));
        prop_assert_eq!(
            models(&Formula::Implies(Box::new(f), Box::new(g)), &v),
            full.difference(mf).union(mg)
        );
    }

    #[test]
    fn display_reparses(f in formula()) {
        let v = vocab();
        let text = f.display(&v).to_string();
        let back = parse_formula(&text, &v).unwrap();
        prop_assert_eq!(models(&back, &v), models(&f, &v));
        prop_assert_eq!(back, f);
    }

    #[test]
    fn parser_never_panics(text in "[abc()!~&|<>TF -]{0,16}") {
        let _ = parse_formula(&text, &vocab());
    }
}
