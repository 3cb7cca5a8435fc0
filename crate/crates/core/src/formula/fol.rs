use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{fol_syntax, Symbol};

/// First-order variable name.
pub type Var = Symbol;

/// The one-sorted first-order language over unary predicates (one per
/// atom), a binary accessibility relation `R` and equality.
///
/// `∀`, `∨` and `→` are sugar over the core constructors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FolFormula {
    /// `P_atom v`
    Pred(Symbol, Var),
    /// `R v1 v2`
    Rel(Var, Var),
    /// `v1 = v2`
    Eq(Var, Var),
    Not(Arc<FolFormula>),
    And(Arc<FolFormula>, Arc<FolFormula>),
    Exists(Var, Arc<FolFormula>),
}

impl FolFormula {
    pub fn pred(atom: &str, v: &str) -> FolFormula {
        FolFormula::Pred(Symbol::from(atom), Symbol::from(v))
    }

    pub fn rel(a: &str, b: &str) -> FolFormula {
        FolFormula::Rel(Symbol::from(a), Symbol::from(b))
    }

    pub fn eq(a: &str, b: &str) -> FolFormula {
        FolFormula::Eq(Symbol::from(a), Symbol::from(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: FolFormula) -> FolFormula {
        FolFormula::Not(Arc::new(f))
    }

    pub fn and(a: FolFormula, b: FolFormula) -> FolFormula {
        FolFormula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: FolFormula, b: FolFormula) -> FolFormula {
        FolFormula::not(FolFormula::and(FolFormula::not(a), FolFormula::not(b)))
    }

    pub fn implies(a: FolFormula, b: FolFormula) -> FolFormula {
        FolFormula::not(FolFormula::and(a, FolFormula::not(b)))
    }

    pub fn exists(v: Var, body: FolFormula) -> FolFormula {
        FolFormula::Exists(v, Arc::new(body))
    }

    pub fn forall(v: Var, body: FolFormula) -> FolFormula {
        FolFormula::not(FolFormula::exists(v, FolFormula::not(body)))
    }

    /// Left-nested conjunction of a non-empty list.
    pub fn conjunction<I: IntoIterator<Item = FolFormula>>(items: I) -> Option<FolFormula> {
        items.into_iter().reduce(FolFormula::and)
    }

    pub fn free_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            FolFormula::Pred(_, v) => note(v, bound),
            FolFormula::Rel(a, b) | FolFormula::Eq(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            FolFormula::Not(a) => a.collect_free(bound, out),
            FolFormula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FolFormula::Exists(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            FolFormula::Pred(..) | FolFormula::Rel(..) | FolFormula::Eq(..) => 0,
            FolFormula::Not(a) => a.quantifier_depth(),
            FolFormula::And(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            FolFormula::Exists(_, a) => 1 + a.quantifier_depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FolFormula::Pred(..) | FolFormula::Rel(..) | FolFormula::Eq(..) => 1,
            FolFormula::Not(a) | FolFormula::Exists(_, a) => 1 + a.size(),
            FolFormula::And(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for FolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fol_syntax::print(self))
    }
}

impl fmt::Debug for FolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fol({self})")
    }
}
