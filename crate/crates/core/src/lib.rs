//! Definable sabotage modal logic: formulas, finite Kripke models, model
//! checking under link deletion, translations to first-order and hybrid
//! logic, equivalence checks and sabotage games.

pub mod checker;
pub mod equivalence;
pub mod fixtures;
pub mod formula;
pub mod game;
pub mod gen;
pub mod kripke;
pub mod lab;
pub mod translate;
pub mod worldset;

pub use checker::{Checker, Semantics};
pub use formula::{parse_fol, parse_hybrid, parse_ld, FolFormula, HybridFormula, LdFormula};
pub use kripke::{KripkeModel, ModelError, ModelState, PointedModel};
pub use worldset::{World, WorldSet};
