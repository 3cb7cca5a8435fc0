use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{syntax, LdFormula, Symbol};

/// The deletion language extended with nominal variables, `@x` and the
/// binder `!x` (↓x).
///
/// The deletion modality is kept so equivalences that mix both languages
/// can be stated and evaluated. Output of the hybrid translation never
/// contains [`HybridFormula::Del`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HybridFormula {
    Atom(Symbol),
    Top,
    Not(Arc<HybridFormula>),
    And(Arc<HybridFormula>, Arc<HybridFormula>),
    Box(Arc<HybridFormula>),
    Del(Arc<HybridFormula>, Arc<HybridFormula>),
    /// A nominal variable used as a formula: true exactly at its world.
    Nom(Symbol),
    /// `@x φ`
    At(Symbol, Arc<HybridFormula>),
    /// `!x φ`: name the current world `x`.
    Down(Symbol, Arc<HybridFormula>),
}

impl HybridFormula {
    pub fn atom(name: &str) -> HybridFormula {
        HybridFormula::Atom(Symbol::from(name))
    }

    pub fn nom(name: &str) -> HybridFormula {
        HybridFormula::Nom(Symbol::from(name))
    }

    pub fn bot() -> HybridFormula {
        HybridFormula::not(HybridFormula::Top)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: HybridFormula) -> HybridFormula {
        HybridFormula::Not(Arc::new(f))
    }

    pub fn and(a: HybridFormula, b: HybridFormula) -> HybridFormula {
        HybridFormula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: HybridFormula, b: HybridFormula) -> HybridFormula {
        HybridFormula::not(HybridFormula::and(HybridFormula::not(a), HybridFormula::not(b)))
    }

    pub fn implies(a: HybridFormula, b: HybridFormula) -> HybridFormula {
        HybridFormula::not(HybridFormula::and(a, HybridFormula::not(b)))
    }

    pub fn iff(a: HybridFormula, b: HybridFormula) -> HybridFormula {
        HybridFormula::and(
            HybridFormula::implies(a.clone(), b.clone()),
            HybridFormula::implies(b, a),
        )
    }

    pub fn boxed(f: HybridFormula) -> HybridFormula {
        HybridFormula::Box(Arc::new(f))
    }

    pub fn diamond(f: HybridFormula) -> HybridFormula {
        HybridFormula::not(HybridFormula::boxed(HybridFormula::not(f)))
    }

    pub fn del(guard: HybridFormula, body: HybridFormula) -> HybridFormula {
        HybridFormula::Del(Arc::new(guard), Arc::new(body))
    }

    pub fn at(x: Symbol, f: HybridFormula) -> HybridFormula {
        HybridFormula::At(x, Arc::new(f))
    }

    pub fn down(x: Symbol, f: HybridFormula) -> HybridFormula {
        HybridFormula::Down(x, Arc::new(f))
    }

    pub fn conjunction<I: IntoIterator<Item = HybridFormula>>(items: I) -> HybridFormula {
        items
            .into_iter()
            .reduce(HybridFormula::and)
            .unwrap_or(HybridFormula::Top)
    }

    pub fn disjunction<I: IntoIterator<Item = HybridFormula>>(items: I) -> HybridFormula {
        items
            .into_iter()
            .reduce(HybridFormula::or)
            .unwrap_or_else(HybridFormula::bot)
    }

    /// Nominal variables occurring outside the scope of a binder for them.
    pub fn free_nominals(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
        match self {
            HybridFormula::Atom(_) | HybridFormula::Top => {}
            HybridFormula::Nom(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            HybridFormula::Not(a) | HybridFormula::Box(a) => a.collect_free(bound, out),
            HybridFormula::And(a, b) | HybridFormula::Del(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            HybridFormula::At(x, a) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
                a.collect_free(bound, out);
            }
            HybridFormula::Down(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_del_free(&self) -> bool {
        match self {
            HybridFormula::Atom(_) | HybridFormula::Top | HybridFormula::Nom(_) => true,
            HybridFormula::Not(a) | HybridFormula::Box(a) | HybridFormula::At(_, a) | HybridFormula::Down(_, a) => {
                a.is_del_free()
            }
            HybridFormula::And(a, b) => a.is_del_free() && b.is_del_free(),
            HybridFormula::Del(..) => false,
        }
    }

    /// The formula back in the deletion language, if it uses no hybrid
    /// operator.
    pub fn to_ld(&self) -> Option<LdFormula> {
        Some(match self {
            HybridFormula::Atom(a) => LdFormula::Atom(a.clone()),
            HybridFormula::Top => LdFormula::Top,
            HybridFormula::Not(a) => LdFormula::not(a.to_ld()?),
            HybridFormula::Box(a) => LdFormula::boxed(a.to_ld()?),
            HybridFormula::And(a, b) => LdFormula::and(a.to_ld()?, b.to_ld()?),
            HybridFormula::Del(a, b) => LdFormula::del(a.to_ld()?, b.to_ld()?),
            HybridFormula::Nom(_) | HybridFormula::At(..) | HybridFormula::Down(..) => return None,
        })
    }

    /// Replace atoms by hybrid formulas. Nominals are left alone.
    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<HybridFormula>) -> HybridFormula {
        match self {
            HybridFormula::Atom(a) => map(a).unwrap_or_else(|| self.clone()),
            HybridFormula::Top | HybridFormula::Nom(_) => self.clone(),
            HybridFormula::Not(a) => HybridFormula::not(a.substitute(map)),
            HybridFormula::Box(a) => HybridFormula::boxed(a.substitute(map)),
            HybridFormula::And(a, b) => HybridFormula::and(a.substitute(map), b.substitute(map)),
            HybridFormula::Del(a, b) => HybridFormula::del(a.substitute(map), b.substitute(map)),
            HybridFormula::At(x, a) => HybridFormula::at(x.clone(), a.substitute(map)),
            HybridFormula::Down(x, a) => HybridFormula::down(x.clone(), a.substitute(map)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            HybridFormula::Atom(_) | HybridFormula::Top | HybridFormula::Nom(_) => 1,
            HybridFormula::Not(a) | HybridFormula::Box(a) | HybridFormula::At(_, a) | HybridFormula::Down(_, a) => {
                1 + a.size()
            }
            HybridFormula::And(a, b) | HybridFormula::Del(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl From<&LdFormula> for HybridFormula {
    fn from(f: &LdFormula) -> Self {
        f.to_hybrid()
    }
}

impl fmt::Display for HybridFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print(self))
    }
}

impl fmt::Debug for HybridFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({self})")
    }
}
