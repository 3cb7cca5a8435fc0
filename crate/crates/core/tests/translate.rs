mod strategies;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sdml::formula::Var;
use sdml::kripke::ModelSpace;
use sdml::translate::{
    eval_hybrid, hybrid_translate, reduce_global, simplify_fol, simplify_hybrid, standard_translate, Assignment,
    FolEvaluator, DESIGNATED,
};
use sdml::{Checker, Semantics, WorldSet};
use strategies::{hybrid, model, sized_ld};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn first_order_translation_agrees(m in model(5), f in sized_ld(14, 2)) {
        let direct = Checker::new(m.clone(), Semantics::Local).extension_at_base(&f).unwrap();
        let t = standard_translate(&f);
        prop_assert_eq!(FolEvaluator::new(&t).extension(&m, DESIGNATED).unwrap(), direct, "{}", f);
        let s = simplify_fol(&t);
        prop_assert_eq!(FolEvaluator::new(&s).extension(&m, DESIGNATED).unwrap(), direct, "{}", f);
    }

    #[test]
    fn hybrid_translation_agrees(m in model(5), f in sized_ld(14, 2)) {
        let direct = Checker::new(m.clone(), Semantics::Local).extension_at_base(&f).unwrap();
        let state = m.initial_state();
        for h in [hybrid_translate(&f), simplify_hybrid(&hybrid_translate(&f))] {
            let ext: WorldSet = m.worlds().filter(|&w| eval_hybrid(&state, w, &Assignment::new(), &h).unwrap()).collect();
            prop_assert_eq!(ext, direct, "{}", f);
        }
    }

    #[test]
    fn only_the_designated_variable_is_free(f in sized_ld(24, 3)) {
        let free = standard_translate(&f).free_variables();
        prop_assert_eq!(free, BTreeSet::from([Var::from(DESIGNATED)]));
    }

    #[test]
    fn hybrid_output_is_closed_and_deletion_free(f in sized_ld(24, 3)) {
        let h = hybrid_translate(&f);
        prop_assert!(h.is_del_free());
        prop_assert!(h.free_nominals().is_empty());
    }

    #[test]
    fn global_reduction_is_deletion_free_and_equivalent(m in model(4), f in sized_ld(16, 3)) {
        let r = reduce_global(&f);
        prop_assert!(r.is_del_free());
        let mut c = Checker::new(m.clone(), Semantics::Global);
        prop_assert_eq!(c.extension_at_base(&r).unwrap(), c.extension_at_base(&f).unwrap(), "{}", f);
    }

    #[test]
    fn hybrid_simplifier_preserves_meaning(m in model(4), f in hybrid(5, 16), x in 0usize..4, y in 0usize..4) {
        let state = m.initial_state();
        let n = m.len();
        let mut a = Assignment::new();
        a.insert("x".into(), sdml::World(x % n));
        a.insert("y".into(), sdml::World(y % n));
        let s = simplify_hybrid(&f);
        for w in m.worlds() {
            prop_assert_eq!(eval_hybrid(&state, w, &a, &f).unwrap(), eval_hybrid(&state, w, &a, &s).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn raw_translation_matches_hand_simplified_form(n in 1usize..=5, i in any::<u128>()) {
        let space = ModelSpace::new(n, &["p1", "p2"]).unwrap();
        let m = space.decode(i % space.count());
        let raw = FolEvaluator::new(&standard_translate(&sdml::parse_ld("<>[-<>p1][]p2").unwrap()));
        let hand = FolEvaluator::new(&sdml::fixtures::diamond_del_box_simplified());
        prop_assert_eq!(raw.extension(&m, DESIGNATED).unwrap(), hand.extension(&m, DESIGNATED).unwrap());
    }
}
