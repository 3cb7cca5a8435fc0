//! Bundled models and named formulas.
//!
//! Every fixture is a checked-in file under `fixtures/`, embedded at compile
//! time. Accessors parse on each call and panic only if a checked-in file
//! is broken, which the unit tests below rule out.

use std::sync::Arc;

use crate::formula::{FolFormula, HybridFormula, LdFormula, NamedFormulas};
use crate::kripke::KripkeModel;

macro_rules! model_fixture {
    ($(#[$doc:meta])* $name:ident, $file:literal) => {
        $(#[$doc])*
        pub fn $name() -> Arc<KripkeModel> {
            Arc::new(
                KripkeModel::from_json(include_str!(concat!("../fixtures/models/", $file)))
                    .expect(concat!("fixture ", $file)),
            )
        }
    };
}

model_fixture!(
    /// Six-node web graph; `p` marks circles, `q` squares.
    intro_graph, "intro.json");
model_fixture!(
    /// [`intro_graph`] with an extra atom `goal` true at `t` and `g`.
    intro_graph_with_goal, "intro_goal.json");
model_fixture!(
    /// `w` with a `p`-successor and a `q`-successor, both pointing back.
    swap_model, "swap.json");
model_fixture!(
    /// Two `p`-worlds in a 2-cycle, both seeing the `q`-world `w3`.
    bisim_m1, "bisim_m1.json");
model_fixture!(
    /// Reflexive `p`-world `v1` seeing the `q`-world `v2`.
    bisim_m2, "bisim_m2.json");
model_fixture!(
    /// Bare 2-cycle.
    two_cycle, "two_cycle.json");
model_fixture!(
    /// Single reflexive world.
    reflexive_point, "loop.json");
model_fixture!(
    /// Root with two dead-end successors.
    fork, "fork.json");
model_fixture!(
    /// Root with one dead-end successor.
    stick, "stick.json");
model_fixture!(
    /// First six worlds of the spy-point construction.
    spy_truncated, "spy_truncated.json");

/// Every model fixture with its file stem.
pub fn all_models() -> Vec<(&'static str, Arc<KripkeModel>)> {
    vec![
        ("intro", intro_graph()),
        ("intro_goal", intro_graph_with_goal()),
        ("swap", swap_model()),
        ("bisim_m1", bisim_m1()),
        ("bisim_m2", bisim_m2()),
        ("two_cycle", two_cycle()),
        ("loop", reflexive_point()),
        ("fork", fork()),
        ("stick", stick()),
        ("spy_truncated", spy_truncated()),
    ]
}

pub const PHI_R: &str = include_str!("../fixtures/formulas/phi_r.sdml");
pub const PHI_INF: &str = include_str!("../fixtures/formulas/phi_inf.sdml");
pub const PHI1_PLUS: &str = include_str!("../fixtures/formulas/phi1_plus.sdml");
pub const ALPHA1_PLUS: &str = include_str!("../fixtures/formulas/alpha1_plus.fol");
pub const ALPHA1: &str = include_str!("../fixtures/formulas/alpha1.fol");
pub const TWO_SUCCESSORS: &str = include_str!("../fixtures/formulas/two_successors.hsdml");
pub const DIAMOND_DEL_BOX_SIMPLIFIED: &str = include_str!("../fixtures/formulas/diamond_del_box_simplified.fol");
pub const GLOBAL_POOL: &str = include_str!("../fixtures/formulas/global_pool.sdml");

fn ld(text: &str) -> NamedFormulas<LdFormula> {
    NamedFormulas::parse_ld(text).expect("bundled formula file")
}

fn fol(text: &str) -> NamedFormulas<FolFormula> {
    NamedFormulas::parse_fol(text).expect("bundled formula file")
}

/// `R1 & R2 & R3`: forces a reflexive evaluation point.
pub fn phi_r() -> NamedFormulas<LdFormula> {
    ld(PHI_R)
}

/// `F1 .. F7, Spy, Irr, No-3cyc, Trans`: only infinite models.
pub fn phi_infinity() -> NamedFormulas<LdFormula> {
    ld(PHI_INF)
}

/// `B1 & B2 & B3`.
pub fn phi1_plus() -> NamedFormulas<LdFormula> {
    ld(PHI1_PLUS)
}

/// First-order property defined by [`phi1_plus`], free in `x`.
pub fn alpha1_plus() -> NamedFormulas<FolFormula> {
    fol(ALPHA1_PLUS)
}

/// The variant of [`alpha1_plus`] without dead-end successors.
pub fn alpha1() -> NamedFormulas<FolFormula> {
    fol(ALPHA1)
}

/// Hybrid formula true exactly at worlds with two successors.
pub fn two_successors() -> HybridFormula {
    NamedFormulas::parse_hybrid(TWO_SUCCESSORS)
        .expect("bundled formula file")
        .conjunction()
}

/// Hand-simplified first-order reading of `<>[-<>p1][]p2`.
pub fn diamond_del_box_simplified() -> FolFormula {
    fol(DIAMOND_DEL_BOX_SIMPLIFIED).conjunction()
}

/// Twenty deletion formulas over `p`, `q`.
pub fn global_pool() -> NamedFormulas<LdFormula> {
    ld(GLOBAL_POOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        assert_eq!(all_models().len(), 10);
        assert_eq!(phi_r().entries.len(), 3);
        assert_eq!(phi_infinity().entries.len(), 11);
        assert_eq!(phi1_plus().entries.len(), 3);
        assert_eq!(alpha1_plus().entries.len(), 4);
        assert_eq!(alpha1().entries.len(), 3);
        assert_eq!(global_pool().entries.len(), 20);
        assert!(two_successors().free_nominals().is_empty());
        let free: Vec<String> = diamond_del_box_simplified()
            .free_variables()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(free, ["x"]);
    }

    #[test]
    fn intro_graph_shape() {
        let m = intro_graph();
        assert_eq!(m.len(), 6);
        assert_eq!(m.edge_count(), 9);
        assert_eq!(m.format_set(m.valuation("p")), "{i, v, g}");
        assert_eq!(m.format_set(m.valuation("q")), "{s, u, t}");
    }
}
