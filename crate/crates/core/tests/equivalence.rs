mod strategies;

use std::sync::Arc;

use proptest::prelude::*;
use sdml::equivalence::{
    bounded_ld_equiv, set_d_bisim, standard_bisim, EquivError, FormulaBounds, Outcome, SetGameBounds,
};
use sdml::kripke::ModelSpace;
use sdml::{fixtures, Checker, KripkeModel, PointedModel, Semantics, World};

/// `m` with world `i` renamed to `w{perm[i]}`.
fn relabel(m: &KripkeModel, perm: &[usize]) -> KripkeModel {
    let name = |w: World| format!("w{}", perm[w.0]);
    let worlds: Vec<String> = (0..m.len()).map(|i| format!("w{i}")).collect();
    let edges: Vec<(String, String)> = m.edges().into_iter().map(|(a, b)| (name(a), name(b))).collect();
    let val: Vec<(String, Vec<String>)> = m
        .atoms()
        .iter()
        .map(|a| (a.to_string(), m.valuation(a).iter().map(name).collect()))
        .collect();
    KripkeModel::new(&worlds, &edges, &val).unwrap()
}

fn bounds(max_size: usize) -> FormulaBounds {
    FormulaBounds {
        max_size,
        max_del_depth: 2,
        ..FormulaBounds::default()
    }
}

/// Checks the implications between the three verdicts for one pair.
fn battery(l: &PointedModel, r: &PointedModel, atoms: &[&str], max_size: usize) -> Result<Outcome, TestCaseError> {
    let set = match set_d_bisim(l, r, &SetGameBounds::default()) {
        Err(EquivError::TooLarge { .. }) => return Err(TestCaseError::reject("set-game arena over the cap")),
        other => other.unwrap(),
    };
    let std = standard_bisim(l, r);
    let formulas = bounded_ld_equiv(l, r, atoms, &bounds(max_size)).unwrap();
    if set.outcome == Outcome::SetBisimilar {
        prop_assert!(std.bisimilar, "set-bisimilar but not bisimilar");
        prop_assert_eq!(
            formulas.outcome,
            Outcome::EquivalentUpToBound,
            "witness {:?}",
            formulas.witness
        );
    }
    if let Some(w) = &formulas.witness {
        let a = Checker::new(l.model.clone(), Semantics::Local)
            .holds(l.point, w)
            .unwrap();
        let b = Checker::new(r.model.clone(), Semantics::Local)
            .holds(r.point, w)
            .unwrap();
        prop_assert_ne!(a, b);
    }
    Ok(set.outcome)
}

fn pair() -> impl Strategy<Value = (PointedModel, PointedModel)> {
    let independent = (
        1usize..=4,
        1usize..=4,
        any::<u128>(),
        any::<u128>(),
        any::<usize>(),
        any::<usize>(),
    )
        .prop_map(|(n, k, i, j, a, b)| {
            let (s, t) = (ModelSpace::new(n, &["p"]).unwrap(), ModelSpace::new(k, &["p"]).unwrap());
            (
                PointedModel::new(Arc::new(s.decode(i % s.count())), World(a % n)),
                PointedModel::new(Arc::new(t.decode(j % t.count())), World(b % k)),
            )
        });
    let isomorphic = (1usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                any::<u128>(),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                0..n,
            )
        })
        .prop_map(|(n, i, perm, a)| {
            let s = ModelSpace::new(n, &["p"]).unwrap();
            let m = s.decode(i % s.count());
            let copy = relabel(&m, &perm);
            (
                PointedModel::new(Arc::new(m), World(a)),
                PointedModel::new(Arc::new(copy), World(perm[a])),
            )
        });
    prop_oneof![independent, isomorphic]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn set_bisimilarity_is_sound((l, r) in pair()) {
        battery(&l, &r, &["p"], 10)?;
    }

    #[test]
    fn isomorphic_copies_are_set_bisimilar(n in 1usize..=3, i in any::<u128>(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let s = ModelSpace::new(n, &["p", "q"]).unwrap();
        let m = s.decode(i % s.count());
        let perm: Vec<usize> = perm.into_iter().filter(|&k| k < n).collect();
        let copy = Arc::new(relabel(&m, &perm));
        let m = Arc::new(m);
        for w in m.worlds() {
            let v = set_d_bisim(&PointedModel::new(m.clone(), w), &PointedModel::new(copy.clone(), World(perm[w.0])), &SetGameBounds::default()).unwrap();
            prop_assert_eq!(v.outcome, Outcome::SetBisimilar);
        }
    }
}

#[test]
fn fixture_pairs() {
    let models = fixtures::all_models();
    for (a, m) in &models {
        for (b, n) in &models {
            let atoms: Vec<&str> = {
                let mut v: Vec<&str> = m.atoms().iter().chain(n.atoms()).map(|s| &**s).collect();
                v.sort();
                v.dedup();
                v.truncate(2);
                v
            };
            if m.len() * n.len() > 36 {
                continue;
            }
            for w in m.worlds() {
                for u in n.worlds() {
                    let (l, r) = (PointedModel::new(m.clone(), w), PointedModel::new(n.clone(), u));
                    battery(&l, &r, &atoms, 6).unwrap_or_else(|e| panic!("{a}:{w} vs {b}:{u}: {e}"));
                }
            }
        }
    }
}

#[test]
fn cycle_length_is_invisible() {
    let l = PointedModel::new(fixtures::two_cycle(), World(0));
    let r = PointedModel::new(fixtures::reflexive_point(), World(0));
    let none: [&str; 0] = [];
    assert_eq!(
        set_d_bisim(&l, &r, &SetGameBounds::default()).unwrap().outcome,
        Outcome::SetBisimilar
    );
    assert_eq!(
        bounded_ld_equiv(&l, &r, &none, &bounds(10)).unwrap().outcome,
        Outcome::EquivalentUpToBound
    );
}
