use crate::formula::{LdFormula, Symbol};

use super::{GameError, GameSpec, Variant};

/// `WinA_k`: `A` can leave `E` stuck off the goal within `k` rounds of the
/// definable game over `alphabet`.
///
/// `WinA_0 = ~g & []false` and
/// `WinA_k = ~g & ([]false | [-a1][]WinA_(k-1) | ... )`; with an empty
/// alphabet the only cut is a pass, `[]WinA_(k-1)`.
pub fn win_formula_a(alphabet: &[Symbol], rounds: u32, goal_atom: &str) -> LdFormula {
    let not_goal = LdFormula::not(LdFormula::atom(goal_atom));
    let stuck = LdFormula::boxed(LdFormula::bot());
    let mut win = LdFormula::and(not_goal.clone(), stuck.clone());
    for _ in 0..rounds {
        let after = LdFormula::boxed(win);
        let cuts: Vec<LdFormula> = if alphabet.is_empty() {
            vec![after]
        } else {
            alphabet
                .iter()
                .map(|a| LdFormula::del(LdFormula::Atom(a.clone()), after.clone()))
                .collect()
        };
        let options = std::iter::once(stuck.clone()).chain(cuts);
        win = LdFormula::and(not_goal.clone(), LdFormula::disjunction(options));
    }
    win
}

/// [`win_formula_a`] for a definable game whose goal region is exactly the
/// extension of `goal_atom`.
pub fn win_formula_for(spec: &GameSpec, rounds: u32, goal_atom: &str) -> Result<LdFormula, GameError> {
    if spec.variant != Variant::Definable {
        return Err(GameError::VariantMismatch);
    }
    if !spec.model.has_atom(goal_atom) {
        return Err(GameError::UnknownAtom(goal_atom.to_string()));
    }
    let extension = spec.model.valuation(goal_atom);
    if extension != spec.goals {
        return Err(GameError::GoalMismatch {
            atom: goal_atom.to_string(),
            goals: spec.model.format_set(spec.goals),
            extension: spec.model.format_set(extension),
        });
    }
    Ok(win_formula_a(&spec.atoms, rounds, goal_atom))
}
