//! Abstract syntax for the deletion language and its two compilation
//! targets, plus their surface syntax.
//!
//! [`LdFormula`] has exactly six constructors. Every other connective
//! (`false`, `|`, `->`, `<>`, `<-φ>`) is sugar that the parser and the
//! smart constructors expand into them.

mod fol;
mod fol_syntax;
mod hybrid;
mod index;
mod metrics;
mod named;
mod syntax;

use std::fmt;
use std::sync::Arc;

pub use fol::{FolFormula, Var};
pub use fol_syntax::parse_fol;
pub use hybrid::HybridFormula;
pub use index::IndexSequence;
pub use metrics::{metrics, Metrics};
pub use named::{NamedFileError, NamedFormulas};
pub use syntax::{is_atom_name, parse_hybrid, parse_ld, ParseError, MAX_NESTING};

/// Interned-by-sharing identifier used for atoms, nominals and variables.
pub type Symbol = Arc<str>;

/// A formula of the deletion language: basic modal logic plus `[-φ]ψ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LdFormula {
    Atom(Symbol),
    Top,
    Not(Arc<LdFormula>),
    And(Arc<LdFormula>, Arc<LdFormula>),
    /// `[]φ`
    Box(Arc<LdFormula>),
    /// `[-guard]body`: cut the links from the current world to the
    /// guard-worlds, then evaluate the body at the same world.
    Del(Arc<LdFormula>, Arc<LdFormula>),
}

impl LdFormula {
    pub fn atom(name: &str) -> LdFormula {
        LdFormula::Atom(Symbol::from(name))
    }

    pub fn top() -> LdFormula {
        LdFormula::Top
    }

    pub fn bot() -> LdFormula {
        LdFormula::not(LdFormula::Top)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: LdFormula) -> LdFormula {
        LdFormula::Not(Arc::new(f))
    }

    pub fn and(a: LdFormula, b: LdFormula) -> LdFormula {
        LdFormula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: LdFormula, b: LdFormula) -> LdFormula {
        LdFormula::not(LdFormula::and(LdFormula::not(a), LdFormula::not(b)))
    }

    pub fn implies(a: LdFormula, b: LdFormula) -> LdFormula {
        LdFormula::not(LdFormula::and(a, LdFormula::not(b)))
    }

    /// `(a -> b) & (b -> a)`
    pub fn iff(a: LdFormula, b: LdFormula) -> LdFormula {
        LdFormula::and(LdFormula::implies(a.clone(), b.clone()), LdFormula::implies(b, a))
    }

    pub fn boxed(f: LdFormula) -> LdFormula {
        LdFormula::Box(Arc::new(f))
    }

    pub fn diamond(f: LdFormula) -> LdFormula {
        LdFormula::not(LdFormula::boxed(LdFormula::not(f)))
    }

    pub fn del(guard: LdFormula, body: LdFormula) -> LdFormula {
        LdFormula::Del(Arc::new(guard), Arc::new(body))
    }

    /// `<-guard>body`, the dual of [`LdFormula::del`].
    pub fn dual_del(guard: LdFormula, body: LdFormula) -> LdFormula {
        LdFormula::not(LdFormula::del(guard, LdFormula::not(body)))
    }

    /// Left-nested conjunction; `true` for an empty iterator.
    pub fn conjunction<I: IntoIterator<Item = LdFormula>>(items: I) -> LdFormula {
        items.into_iter().reduce(LdFormula::and).unwrap_or(LdFormula::Top)
    }

    /// Left-nested disjunction; `false` for an empty iterator.
    pub fn disjunction<I: IntoIterator<Item = LdFormula>>(items: I) -> LdFormula {
        items.into_iter().reduce(LdFormula::or).unwrap_or_else(LdFormula::bot)
    }

    /// Whether the formula contains no deletion modality.
    pub fn is_del_free(&self) -> bool {
        match self {
            LdFormula::Atom(_) | LdFormula::Top => true,
            LdFormula::Not(a) | LdFormula::Box(a) => a.is_del_free(),
            LdFormula::And(a, b) => a.is_del_free() && b.is_del_free(),
            LdFormula::Del(..) => false,
        }
    }

    /// Whether the formula is built from atoms and `true` with `~`/`&` only.
    pub fn is_boolean(&self) -> bool {
        match self {
            LdFormula::Atom(_) | LdFormula::Top => true,
            LdFormula::Not(a) => a.is_boolean(),
            LdFormula::And(a, b) => a.is_boolean() && b.is_boolean(),
            LdFormula::Box(_) | LdFormula::Del(..) => false,
        }
    }

    /// Atom names in first-occurrence order.
    pub fn atoms(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        self.visit(&mut |f| {
            if let LdFormula::Atom(a) = f {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&LdFormula)>(&self, f: &mut F) {
        f(self);
        match self {
            LdFormula::Atom(_) | LdFormula::Top => {}
            LdFormula::Not(a) | LdFormula::Box(a) => a.visit(f),
            LdFormula::And(a, b) | LdFormula::Del(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Replace atoms by formulas. Atoms without an entry are kept.
    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<LdFormula>) -> LdFormula {
        match self {
            LdFormula::Atom(a) => map(a).unwrap_or_else(|| self.clone()),
            LdFormula::Top => LdFormula::Top,
            LdFormula::Not(a) => LdFormula::not(a.substitute(map)),
            LdFormula::Box(a) => LdFormula::boxed(a.substitute(map)),
            LdFormula::And(a, b) => LdFormula::and(a.substitute(map), b.substitute(map)),
            LdFormula::Del(a, b) => LdFormula::del(a.substitute(map), b.substitute(map)),
        }
    }

    /// Injective embedding into the hybrid language.
    pub fn to_hybrid(&self) -> HybridFormula {
        match self {
            LdFormula::Atom(a) => HybridFormula::Atom(a.clone()),
            LdFormula::Top => HybridFormula::Top,
            LdFormula::Not(a) => HybridFormula::not(a.to_hybrid()),
            LdFormula::Box(a) => HybridFormula::boxed(a.to_hybrid()),
            LdFormula::And(a, b) => HybridFormula::and(a.to_hybrid(), b.to_hybrid()),
            LdFormula::Del(a, b) => HybridFormula::del(a.to_hybrid(), b.to_hybrid()),
        }
    }
}

impl fmt::Display for LdFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print(&self.to_hybrid()))
    }
}

impl fmt::Debug for LdFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ld({self})")
    }
}

impl std::str::FromStr for LdFormula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_ld(s)
    }
}

/// Render a formula in the surface syntax accepted by [`parse_ld`].
pub fn print_ld(f: &LdFormula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sugar_constructors_expand_to_core() {
        let p = LdFormula::atom("p");
        let q = LdFormula::atom("q");
        assert_eq!(
            LdFormula::diamond(p.clone()),
            LdFormula::not(LdFormula::boxed(LdFormula::not(p.clone())))
        );
        assert_eq!(
            LdFormula::dual_del(p.clone(), q.clone()),
            LdFormula::not(LdFormula::del(p.clone(), LdFormula::not(q.clone())))
        );
        assert_eq!(LdFormula::conjunction([]), LdFormula::Top);
        assert_eq!(LdFormula::disjunction([]), LdFormula::bot());
        assert!(LdFormula::or(p.clone(), q.clone()).is_boolean());
        assert!(!LdFormula::diamond(p).is_boolean());
    }

    #[test]
    fn atoms_in_order() {
        let f = parse_ld("[-q]<>(p & q) | r").unwrap();
        let names: Vec<String> = f.atoms().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["q", "p", "r"]);
    }

    #[test]
    fn substitution_replaces_atoms() {
        let f = parse_ld("[-phi]p").unwrap();
        let g = f.substitute(&|a| (a == "phi").then(|| parse_ld("<>q").unwrap()));
        assert_eq!(g, parse_ld("[-<>q]p").unwrap());
    }
}

macro_rules! serialize_as_text {
    ($($t:ty),*) => {$(
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}

serialize_as_text!(LdFormula, HybridFormula, FolFormula);
