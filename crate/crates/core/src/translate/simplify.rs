//! Constant folding for displaying translation output. Correctness checks
//! always run on the raw translations.

use crate::formula::{FolFormula, HybridFormula, Symbol};

enum Fold<F> {
    True,
    False,
    Keep(F),
}

/// Fold `v = v`, double negations, constant conjuncts and vacuous
/// quantifiers.
pub fn simplify_fol(f: &FolFormula) -> FolFormula {
    let x = Symbol::from(super::DESIGNATED);
    let top = FolFormula::Eq(x.clone(), x);
    match fold_fol(f) {
        Fold::True => top,
        Fold::False => FolFormula::not(top),
        Fold::Keep(g) => g,
    }
}

fn fold_fol(f: &FolFormula) -> Fold<FolFormula> {
    match f {
        FolFormula::Eq(a, b) if a == b => Fold::True,
        FolFormula::Pred(..) | FolFormula::Rel(..) | FolFormula::Eq(..) => Fold::Keep(f.clone()),
        FolFormula::Not(a) => match fold_fol(a) {
            Fold::True => Fold::False,
            Fold::False => Fold::True,
            Fold::Keep(FolFormula::Not(inner)) => Fold::Keep((*inner).clone()),
            Fold::Keep(g) => Fold::Keep(FolFormula::not(g)),
        },
        FolFormula::And(a, b) => match (fold_fol(a), fold_fol(b)) {
            (Fold::False, _) | (_, Fold::False) => Fold::False,
            (Fold::True, other) | (other, Fold::True) => other,
            (Fold::Keep(a), Fold::Keep(b)) => Fold::Keep(FolFormula::and(a, b)),
        },
        FolFormula::Exists(v, a) => match fold_fol(a) {
            Fold::Keep(g) if g.free_variables().contains(v) => Fold::Keep(FolFormula::exists(v.clone(), g)),
            other => other,
        },
    }
}

/// Fold constants, `@x x`, double negations and unused binders.
pub fn simplify_hybrid(f: &HybridFormula) -> HybridFormula {
    match fold_hybrid(f) {
        Fold::True => HybridFormula::Top,
        Fold::False => HybridFormula::bot(),
        Fold::Keep(g) => g,
    }
}

fn fold_hybrid(f: &HybridFormula) -> Fold<HybridFormula> {
    match f {
        HybridFormula::Top => Fold::True,
        HybridFormula::Atom(_) | HybridFormula::Nom(_) => Fold::Keep(f.clone()),
        HybridFormula::Not(a) => match fold_hybrid(a) {
            Fold::True => Fold::False,
            Fold::False => Fold::True,
            Fold::Keep(HybridFormula::Not(inner)) => Fold::Keep((*inner).clone()),
            Fold::Keep(g) => Fold::Keep(HybridFormula::not(g)),
        },
        HybridFormula::And(a, b) => match (fold_hybrid(a), fold_hybrid(b)) {
            (Fold::False, _) | (_, Fold::False) => Fold::False,
            (Fold::True, other) | (other, Fold::True) => other,
            (Fold::Keep(a), Fold::Keep(b)) => Fold::Keep(HybridFormula::and(a, b)),
        },
        HybridFormula::Box(a) => match fold_hybrid(a) {
            Fold::True => Fold::True,
            Fold::False => Fold::Keep(HybridFormula::boxed(HybridFormula::bot())),
            Fold::Keep(g) => Fold::Keep(HybridFormula::boxed(g)),
        },
        HybridFormula::Del(a, b) => {
            let guard = simplify_hybrid(a);
            match fold_hybrid(b) {
                Fold::Keep(g) => Fold::Keep(HybridFormula::del(guard, g)),
                constant => constant,
            }
        }
        HybridFormula::At(x, a) => match &**a {
            HybridFormula::Nom(y) if x == y => Fold::True,
            _ => match fold_hybrid(a) {
                Fold::Keep(g) => Fold::Keep(HybridFormula::at(x.clone(), g)),
                constant => constant,
            },
        },
        HybridFormula::Down(x, a) => match fold_hybrid(a) {
            Fold::Keep(g) if g.free_nominals().contains(x) => Fold::Keep(HybridFormula::down(x.clone(), g)),
            other => other,
        },
    }
}
