mod common;

use sdml::fixtures;
use sdml::game::{self, GameSpec, Player, Variant, DEFAULT_ARENA_CAP};

#[test]
fn win_formula_matches_bounded_solve_on_fixtures() {
    for spec in common::fixture_specs() {
        assert!(
            common::formula_agrees(&spec),
            "start {:?} rounds {:?}",
            spec.start,
            spec.rounds
        );
    }
}

#[test]
fn win_formula_matches_bounded_solve_on_random_games() {
    for spec in common::random_specs(11, 200) {
        assert!(common::formula_agrees(&spec), "{:?}", spec);
    }
}

#[test]
fn intro_strategies_hold_against_every_reply() {
    for variant in [Variant::Definable, Variant::SingleEdge] {
        for start in ["i", "s", "v", "u", "t", "g"] {
            let spec =
                GameSpec::named(fixtures::intro_graph(), start, &["t", "g"], variant, &["p", "q"], None).unwrap();
            let sol = game::solve(&spec, DEFAULT_ARENA_CAP).unwrap();
            assert!(common::strategy_realizes_winner(&spec, &sol), "{variant} from {start}");
        }
    }
}

#[test]
fn random_strategies_hold() {
    for mut spec in common::random_specs(5, 100) {
        spec.rounds = None;
        let sol = game::solve(&spec, DEFAULT_ARENA_CAP).unwrap();
        assert!(common::strategy_realizes_winner(&spec, &sol));
    }
}

#[test]
fn intro_outcomes() {
    let single = GameSpec::named(
        fixtures::intro_graph(),
        "i",
        &["t", "g"],
        Variant::SingleEdge,
        &["p", "q"],
        None,
    )
    .unwrap();
    assert_eq!(game::solve(&single, DEFAULT_ARENA_CAP).unwrap().winner, Player::E);
    let definable = GameSpec::named(
        fixtures::intro_graph(),
        "i",
        &["t", "g"],
        Variant::Definable,
        &["p", "q"],
        None,
    )
    .unwrap();
    assert_eq!(game::solve(&definable, DEFAULT_ARENA_CAP).unwrap().winner, Player::A);
}
