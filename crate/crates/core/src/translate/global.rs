use crate::formula::LdFormula;

/// Rewrite `φ` into a deletion-free formula equivalent to it under the
/// global semantics.
///
/// Deletions are eliminated innermost first with
/// `[-g]p ⇒ p`, `[-g]true ⇒ true`, `[-g]~c ⇒ ~[-g]c`,
/// `[-g](c & d) ⇒ [-g]c & [-g]d` and `[-g][]c ⇒ [](~g -> [-g]c)`.
pub fn reduce_global(phi: &LdFormula) -> LdFormula {
    match phi {
        LdFormula::Atom(_) | LdFormula::Top => phi.clone(),
        LdFormula::Not(a) => LdFormula::not(reduce_global(a)),
        LdFormula::And(a, b) => LdFormula::and(reduce_global(a), reduce_global(b)),
        LdFormula::Box(a) => LdFormula::boxed(reduce_global(a)),
        LdFormula::Del(g, b) => push(&reduce_global(g), &reduce_global(b)),
    }
}

fn push(guard: &LdFormula, body: &LdFormula) -> LdFormula {
    match body {
        LdFormula::Atom(_) | LdFormula::Top => body.clone(),
        LdFormula::Not(a) => LdFormula::not(push(guard, a)),
        LdFormula::And(a, b) => LdFormula::and(push(guard, a), push(guard, b)),
        LdFormula::Box(a) => LdFormula::boxed(LdFormula::implies(LdFormula::not(guard.clone()), push(guard, a))),
        LdFormula::Del(..) => unreachable!("bodies are reduced before pushing"),
    }
}
