use serde::{Deserialize, Serialize};

use super::LdFormula;

/// Structural measures of an `L_d` formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Metrics {
    /// Number of AST nodes.
    pub size: usize,
    /// Box nesting, where a deletion guard counts at the depth of the
    /// body position it restricts.
    pub modal_depth: usize,
    /// Nesting of deletion operators, guards included.
    pub del_depth: usize,
}

pub fn metrics(f: &LdFormula) -> Metrics {
    Metrics {
        size: size(f),
        modal_depth: modal_depth(f, 0),
        del_depth: del_depth(f),
    }
}

fn size(f: &LdFormula) -> usize {
    match f {
        LdFormula::Atom(_) | LdFormula::Top => 1,
        LdFormula::Not(a) | LdFormula::Box(a) => 1 + size(a),
        LdFormula::And(a, b) | LdFormula::Del(a, b) => 1 + size(a) + size(b),
    }
}

// `pending` is the depth of the deepest guard whose deletion is still in
// force; it is re-evaluated at every successor reached below.
fn modal_depth(f: &LdFormula, pending: usize) -> usize {
    match f {
        LdFormula::Atom(_) | LdFormula::Top => 0,
        LdFormula::Not(a) => modal_depth(a, pending),
        LdFormula::And(a, b) => modal_depth(a, pending).max(modal_depth(b, pending)),
        LdFormula::Box(a) => 1 + pending.max(modal_depth(a, pending)),
        LdFormula::Del(g, b) => {
            let guard = modal_depth(g, pending);
            modal_depth(b, pending.max(guard))
        }
    }
}

fn del_depth(f: &LdFormula) -> usize {
    match f {
        LdFormula::Atom(_) | LdFormula::Top => 0,
        LdFormula::Not(a) | LdFormula::Box(a) => del_depth(a),
        LdFormula::And(a, b) => del_depth(a).max(del_depth(b)),
        LdFormula::Del(g, b) => 1 + del_depth(g).max(del_depth(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_ld;

    fn m(s: &str) -> (usize, usize, usize) {
        let x = metrics(&parse_ld(s).unwrap());
        (x.size, x.modal_depth, x.del_depth)
    }

    #[test]
    fn small_cases() {
        assert_eq!(m("p"), (1, 0, 0));
        assert_eq!(m("[]p"), (2, 1, 0));
        assert_eq!(m("[-p]q"), (3, 0, 1));
        assert_eq!(m("[-[-p]q]r"), (5, 0, 2));
    }

    #[test]
    fn guard_counts_under_enclosing_diamond() {
        let (_, md, dd) = m("<>[-<>p1][]p2");
        assert_eq!((md, dd), (3, 1));
    }
}
