mod strategies;

use std::sync::Arc;

use proptest::prelude::*;
use sdml::checker::eval_direct;
use sdml::kripke::EdgeIndex;
use sdml::{Checker, KripkeModel, LdFormula, ModelState, Semantics, WorldSet};
use strategies::{basic, ld, model, sized_ld};

fn semantics() -> impl Strategy<Value = Semantics> {
    prop_oneof![Just(Semantics::Local), Just(Semantics::Global)]
}

fn direct_extension(s: &ModelState, f: &LdFormula, sem: Semantics) -> WorldSet {
    let mut out = WorldSet::EMPTY;
    for w in s.base().worlds() {
        if eval_direct(s, w, f, sem, false).unwrap() {
            out.insert(w);
        }
    }
    out
}

fn some_state(m: &Arc<KripkeModel>, bits: u64) -> ModelState {
    let idx = EdgeIndex::new(m).unwrap();
    idx.to_state(m, bits & idx.state_count().saturating_sub(1) as u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn memoized_matches_direct(m in model(5), f in sized_ld(20, 3), sem in semantics(), bits in any::<u64>()) {
        let s = some_state(&m, bits);
        let mut c = Checker::new(m.clone(), sem);
        prop_assert_eq!(c.extension(&s, &f).unwrap(), direct_extension(&s, &f, sem), "{}", f);
    }

    #[test]
    fn tiny_cache_changes_nothing(m in model(4), f in sized_ld(20, 3), sem in semantics()) {
        let mut small = Checker::new(m.clone(), sem).with_cache_cap(Some(3));
        let mut big = Checker::new(m.clone(), sem);
        prop_assert_eq!(small.extension_at_base(&f).unwrap(), big.extension_at_base(&f).unwrap());
    }

    #[test]
    fn semantics_agree_without_deletion(m in model(5), f in basic(8, 20)) {
        let local = Checker::new(m.clone(), Semantics::Local).extension_at_base(&f).unwrap();
        let global = Checker::new(m.clone(), Semantics::Global).extension_at_base(&f).unwrap();
        prop_assert_eq!(local, global);
    }

    #[test]
    fn deletion_is_self_dual(m in model(4), g in ld(3, 6), b in ld(3, 6), sem in semantics()) {
        let mut c = Checker::new(m.clone(), sem);
        let boxed = c.extension_at_base(&LdFormula::del(g.clone(), b.clone())).unwrap();
        let dual = c.extension_at_base(&LdFormula::dual_del(g, b)).unwrap();
        prop_assert_eq!(boxed, dual);
    }

    #[test]
    fn deletion_distributes_over_implication(
        m in model(3), g in ld(2, 4), a in ld(2, 4), b in ld(2, 4), sem in semantics(),
    ) {
        let del = |x: LdFormula| LdFormula::del(g.clone(), x);
        let k = LdFormula::implies(
            del(LdFormula::implies(a.clone(), b.clone())),
            LdFormula::implies(del(a), del(b)),
        );
        let ext = Checker::new(m.clone(), sem).extension_at_base(&k).unwrap();
        prop_assert_eq!(ext, m.all_worlds());
    }

    #[test]
    fn atoms_are_unaffected_by_deletion(m in model(4), g in sized_ld(10, 2), sem in semantics()) {
        let mut c = Checker::new(m.clone(), sem);
        for a in ["p", "q"] {
            let ext = c.extension_at_base(&LdFormula::del(g.clone(), LdFormula::atom(a))).unwrap();
            prop_assert_eq!(ext, m.valuation(a));
        }
    }
}

#[test]
fn strict_mode_rejects_unknown_atoms() {
    let m = sdml::fixtures::intro_graph();
    let f = sdml::parse_ld("[-r]p").unwrap();
    let i = m.world("i").unwrap();
    assert!(Checker::new(m.clone(), Semantics::Local)
        .strict(true)
        .holds(i, &f)
        .is_err());
    assert!(Checker::new(m.clone(), Semantics::Local).holds(i, &f).is_ok());
}
