//! Comparing pointed models: standard bisimulation, bounded
//! indistinguishability by deletion formulas, and a set-based game for
//! deletion bisimulation.

mod bisim;
mod formulas;
mod setgame;

use serde::Serialize;
use thiserror::Error;

use std::sync::Arc;

use crate::checker::{CheckError, Checker, Semantics};
use crate::formula::LdFormula;
use crate::kripke::{EdgeIndex, KripkeModel, ModelError};

pub use bisim::{standard_bisim, BisimResult};
pub use formulas::{bounded_ld_equiv, FormulaBounds};
pub use setgame::{set_d_bisim, SetGameBounds};

/// Result kinds of the equivalence procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    EquivalentUpToBound,
    Distinguished,
    SetBisimilar,
    NotSetBisimilar,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::EquivalentUpToBound => "equivalent-up-to-bound",
            Outcome::Distinguished => "distinguished",
            Outcome::SetBisimilar => "set-bisimilar",
            Outcome::NotSetBisimilar => "not-set-bisimilar",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivVerdict {
    pub outcome: Outcome,
    /// Formula true on exactly one side, for `Distinguished`.
    pub witness: Option<LdFormula>,
    /// Relation summary or the reason the starting pair failed.
    pub detail: Option<String>,
    /// Formulas kept after deduplication, or configurations explored.
    pub explored: usize,
}

#[derive(Debug, Error)]
pub enum EquivError {
    #[error("{what}: {count} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, count: u128, cap: u128 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("witness {0} failed the re-check")]
    WitnessRejected(String),
}

/// Whether `a` and `b` have the same extension in every deletion state
/// (every subset of removed edges) of every model in `models`.
pub fn equivalent_on_closure(
    models: &[Arc<KripkeModel>],
    a: &LdFormula,
    b: &LdFormula,
    semantics: Semantics,
) -> Result<bool, CheckError> {
    for m in models {
        let idx = EdgeIndex::new(m)?;
        let mut c = Checker::new(m.clone(), semantics);
        for mask in 0..idx.state_count() as u64 {
            let s = idx.to_state(m, mask);
            if c.extension(&s, a)? != c.extension(&s, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kripke::PointedModel;
    use crate::parse_ld;

    fn pair(
        a: (std::sync::Arc<crate::KripkeModel>, &str),
        b: (std::sync::Arc<crate::KripkeModel>, &str),
    ) -> (PointedModel, PointedModel) {
        (
            PointedModel::named(a.0, a.1).unwrap(),
            PointedModel::named(b.0, b.1).unwrap(),
        )
    }

    #[test]
    fn bisimilar_pair_is_separated_by_deletion() {
        let (l, r) = pair((fixtures::bisim_m1(), "w1"), (fixtures::bisim_m2(), "v1"));
        assert!(standard_bisim(&l, &r).bisimilar);
        let v = bounded_ld_equiv(&l, &r, &["p", "q"], &FormulaBounds::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Distinguished);
        let w = v.witness.unwrap();
        let target = parse_ld("[-q]<><>q").unwrap();
        let models = [fixtures::bisim_m1(), fixtures::bisim_m2()];
        assert!(
            equivalent_on_closure(&models, &w, &target, Semantics::Local).unwrap(),
            "{w}"
        );
        let g = set_d_bisim(&l, &r, &SetGameBounds::default()).unwrap();
        assert_eq!(g.outcome, Outcome::NotSetBisimilar, "{:?}", g.detail);
    }

    #[test]
    fn cycle_lengths_are_invisible() {
        let (l, r) = pair((fixtures::two_cycle(), "w1"), (fixtures::reflexive_point(), "v"));
        let bounds = FormulaBounds {
            max_size: 10,
            ..FormulaBounds::default()
        };
        let none: [&str; 0] = [];
        assert_eq!(
            bounded_ld_equiv(&l, &r, &none, &bounds).unwrap().outcome,
            Outcome::EquivalentUpToBound
        );
        assert_eq!(
            set_d_bisim(&l, &r, &SetGameBounds::default()).unwrap().outcome,
            Outcome::SetBisimilar
        );
    }

    #[test]
    fn successor_count_is_invisible() {
        let (l, r) = pair((fixtures::fork(), "w"), (fixtures::stick(), "v"));
        let bounds = FormulaBounds {
            max_size: 10,
            ..FormulaBounds::default()
        };
        let none: [&str; 0] = [];
        assert_eq!(
            bounded_ld_equiv(&l, &r, &none, &bounds).unwrap().outcome,
            Outcome::EquivalentUpToBound
        );
        assert_eq!(
            set_d_bisim(&l, &r, &SetGameBounds::default()).unwrap().outcome,
            Outcome::SetBisimilar
        );
    }

    #[test]
    fn identical_models_are_set_bisimilar() {
        let m = fixtures::intro_graph();
        let (l, r) = pair((m.clone(), "i"), (m, "i"));
        assert_eq!(
            set_d_bisim(&l, &r, &SetGameBounds::default()).unwrap().outcome,
            Outcome::SetBisimilar
        );
    }
}
