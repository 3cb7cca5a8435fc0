mod strategies;

use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;
use sdml::kripke::{enumerate_models, EdgeIndex, ModelSpace, DEFAULT_ENUMERATION_CAP};
use sdml::{KripkeModel, ModelState, World, WorldSet};
use strategies::model;

fn random_state(m: &Arc<KripkeModel>, bits: u64) -> ModelState {
    let idx = EdgeIndex::new(m).unwrap();
    let mask = if idx.edge_count() == 64 {
        bits
    } else {
        bits & ((1u64 << idx.edge_count()) - 1)
    };
    idx.to_state(m, mask)
}

fn same(a: &ModelState, b: &ModelState) -> bool {
    a.removed_rows() == b.removed_rows()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn live_and_removed_partition_the_base(m in model(5), bits in any::<u64>(), w in 0usize..5, t in any::<u64>()) {
        let s = random_state(&m, bits);
        let w = World(w % m.len());
        let s = s.delete_from(w, WorldSet(t & WorldSet::full(m.len()).bits()));
        let live: HashSet<_> = s.live_edges().into_iter().collect();
        let removed: HashSet<_> = s.removed().into_iter().collect();
        let base: HashSet<_> = m.edges().into_iter().collect();
        prop_assert!(live.is_disjoint(&removed));
        prop_assert_eq!(live.union(&removed).cloned().collect::<HashSet<_>>(), base);
    }

    #[test]
    fn delete_from_is_idempotent(m in model(5), bits in any::<u64>(), w in 0usize..5, t in any::<u64>()) {
        let s = random_state(&m, bits);
        let w = World(w % m.len());
        let targets = WorldSet(t & WorldSet::full(m.len()).bits());
        let once = s.delete_from(w, targets);
        prop_assert!(same(&once, &once.delete_from(w, targets)));
    }

    #[test]
    fn delete_from_commutes_at_distinct_sources(
        m in model(5), bits in any::<u64>(), v in 0usize..5, w in 0usize..5, a in any::<u64>(), b in any::<u64>(),
    ) {
        let (v, w) = (World(v % m.len()), World(w % m.len()));
        prop_assume!(v != w);
        let full = WorldSet::full(m.len()).bits();
        let (a, b) = (WorldSet(a & full), WorldSet(b & full));
        let s = random_state(&m, bits);
        prop_assert!(same(&s.delete_from(v, a).delete_from(w, b), &s.delete_from(w, b).delete_from(v, a)));
    }

    #[test]
    fn edge_masks_agree_with_states(m in model(5), bits in any::<u64>(), w in 0usize..5, t in any::<u64>()) {
        let idx = EdgeIndex::new(&m).unwrap();
        let s = random_state(&m, bits);
        let mask = idx.mask_of(&s);
        let w = World(w % m.len());
        let targets = WorldSet(t & WorldSet::full(m.len()).bits());
        let next = idx.delete_from(mask, w, targets);
        prop_assert!(same(&idx.to_state(&m, next), &s.delete_from(w, targets)));
        for u in m.worlds() {
            prop_assert_eq!(idx.live(mask, u), s.successors(u));
        }
    }

    #[test]
    fn json_round_trip(m in model(5)) {
        let text = m.to_json();
        prop_assert_eq!(&KripkeModel::from_json(&text).unwrap(), &*m);
    }

    #[test]
    fn encode_inverts_decode(n in 1usize..=4, i in any::<u128>()) {
        let space = ModelSpace::new(n, &["p", "q"]).unwrap();
        let i = i % space.count();
        prop_assert_eq!(space.encode(&space.decode(i)), Some(i));
    }
}

#[test]
fn enumeration_counts_and_distinctness() {
    for n in 1..=3 {
        for atoms in [&[][..], &["p"][..], &["p", "q"][..]] {
            let expected = 1u128 << (n * n + n * atoms.len());
            let models: Vec<KripkeModel> = enumerate_models(n, atoms, DEFAULT_ENUMERATION_CAP).unwrap().collect();
            assert_eq!(models.len() as u128, expected, "n={n} atoms={atoms:?}");
            let distinct: HashSet<&KripkeModel> = models.iter().collect();
            assert_eq!(distinct.len(), models.len());
        }
    }
}

#[test]
fn malformed_files_are_rejected() {
    for bad in [
        r#"{"worlds":["a","a"],"edges":[],"val":{}}"#,
        r#"{"worlds":["a"],"edges":[["a","b"]],"val":{}}"#,
        r#"{"worlds":["a"],"edges":[],"val":{"p":["z"]}}"#,
        r#"{"worlds":["a"],"edges":[["a","a"],["a","a"]],"val":{}}"#,
        r#"{"worlds":"a"}"#,
        "not json",
    ] {
        assert!(KripkeModel::from_json(bad).is_err(), "{bad}");
    }
}
