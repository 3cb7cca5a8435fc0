//! Translations of the deletion language into first-order logic and hybrid
//! logic, evaluators for both targets, and the reduction of the global
//! variant to plain modal logic.

mod fol_eval;
mod global;
mod hybrid;
mod hybrid_eval;
mod simplify;
mod standard;

use thiserror::Error;

pub use fol_eval::{eval_fol, Assignment, FolEvaluator, TABLE_CAP};
pub use global::reduce_global;
pub use hybrid::{hybrid_translate, n_successors};
pub use hybrid_eval::{eval_hybrid, HybridEvaluator};
pub use simplify::{simplify_fol, simplify_hybrid};
pub use standard::{standard_translate, standard_translate_at, DESIGNATED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable '{0}' is not assigned")]
    UnboundVariable(String),
    #[error("nominal '{0}' is not assigned")]
    UnboundNominal(String),
    #[error("world index {0} is out of range")]
    WorldOutOfRange(usize),
    #[error("a subformula with {variables} free variables over {worlds} worlds exceeds the table cap")]
    TooLarge { worlds: usize, variables: usize },
}
