#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdml::formula::Symbol;
use sdml::game::{self, GameConfig, GameSpec, Player, Solution, Variant};
use sdml::{fixtures, Checker, KripkeModel, Semantics, WorldSet};

/// Every bounded definable game on the fixtures, with the goal region
/// marked by a fresh atom `goal`.
pub fn fixture_specs() -> Vec<GameSpec> {
    let mut out = Vec::new();
    for (_, m) in fixtures::all_models() {
        let alphabet: Vec<Symbol> = m.atoms().iter().filter(|a| &***a != "goal").take(2).cloned().collect();
        let goals = if m.has_atom("goal") {
            m.valuation("goal")
        } else if let Some(a) = m.atoms().first() {
            m.valuation(a)
        } else {
            WorldSet::singleton(m.worlds().last().unwrap())
        };
        let m = Arc::new(m.with_atom("goal", goals).unwrap());
        for start in m.worlds() {
            for rounds in 0..=3 {
                out.push(GameSpec::new(m.clone(), start, goals, Variant::Definable, &alphabet, Some(rounds)).unwrap());
            }
        }
    }
    out
}

/// `count` seeded random bounded definable games on at most four worlds.
pub fn random_specs(seed: u64, count: usize) -> Vec<GameSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m: KripkeModel = sdml::gen::random_model(&mut rng, 4, &["p", "q", "goal"]).unwrap();
            let m = Arc::new(m);
            let mut alphabet: Vec<Symbol> = ["p", "q"].iter().map(|a| Symbol::from(*a)).collect();
            alphabet.shuffle(&mut rng);
            alphabet.truncate(rng.gen_range(0..=2));
            let start = m.worlds().nth(rng.gen_range(0..m.len())).unwrap();
            let rounds = rng.gen_range(0..=3);
            GameSpec::new(
                m.clone(),
                start,
                m.valuation("goal"),
                Variant::Definable,
                &alphabet,
                Some(rounds),
            )
            .unwrap()
        })
        .collect()
}

/// Whether `WinA_r` holds at the start exactly when bounded solving
/// declares `A` the winner.
pub fn formula_agrees(spec: &GameSpec) -> bool {
    let rounds = spec.rounds.unwrap();
    let f = game::win_formula_for(spec, rounds, "goal").unwrap();
    let mut checker = Checker::new(spec.model.clone(), Semantics::Local);
    let holds = checker.eval(&spec.model.initial_state(), spec.start, &f).unwrap();
    let sol = game::solve(spec, game::DEFAULT_ARENA_CAP).unwrap();
    holds == (sol.winner == Player::A)
}

/// Follow the strategy against every opponent reply and confirm that no
/// play escapes the declared winner.
pub fn strategy_realizes_winner(spec: &GameSpec, sol: &Solution) -> bool {
    let mut seen: HashSet<GameConfig> = HashSet::new();
    let mut stack = vec![spec.initial()];
    while let Some(c) = stack.pop() {
        if !seen.insert(c) {
            continue;
        }
        if let Some(w) = spec.outcome(&c) {
            if w != sol.winner {
                return false;
            }
            continue;
        }
        if c.turn == sol.winner {
            match sol.strategy.get(&c) {
                Some(m) if spec.legal_moves(&c).contains(m) => stack.push(spec.apply(&c, m)),
                _ => return false,
            }
        } else {
            for m in spec.legal_moves(&c) {
                stack.push(spec.apply(&c, &m));
            }
        }
    }
    sol.winner == Player::A || !has_cycle(spec, sol)
}

/// Whether the graph of plays consistent with the strategy has a cycle.
fn has_cycle(spec: &GameSpec, sol: &Solution) -> bool {
    fn visit(
        spec: &GameSpec,
        sol: &Solution,
        c: GameConfig,
        active: &mut HashSet<GameConfig>,
        done: &mut HashSet<GameConfig>,
    ) -> bool {
        if done.contains(&c) {
            return false;
        }
        if !active.insert(c) {
            return true;
        }
        let next: Vec<GameConfig> = if spec.outcome(&c).is_some() {
            Vec::new()
        } else if c.turn == sol.winner {
            sol.strategy.get(&c).map(|m| spec.apply(&c, m)).into_iter().collect()
        } else {
            spec.legal_moves(&c).iter().map(|m| spec.apply(&c, m)).collect()
        };
        for n in next {
            if visit(spec, sol, n, active, done) {
                return true;
            }
        }
        active.remove(&c);
        done.insert(c);
        false
    }
    visit(spec, sol, spec.initial(), &mut HashSet::new(), &mut HashSet::new())
}
