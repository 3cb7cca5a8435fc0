use crate::formula::{FolFormula, IndexSequence, LdFormula, Symbol, Var};

/// Name of the free variable of every sentence-level translation.
pub const DESIGNATED: &str = "x";

/// First-order translation of `φ` with seed `⟨x, false⟩`; free only in `x`.
pub fn standard_translate(phi: &LdFormula) -> FolFormula {
    let x: Var = Symbol::from(DESIGNATED);
    let seed = IndexSequence::seed(x.clone());
    Translator::default().st(&x, &seed, phi)
}

/// First-order translation under an explicit index sequence, with bound
/// variables drawn from `x0, x1, ...`.
pub fn standard_translate_at(x: &str, o: &IndexSequence, phi: &LdFormula) -> FolFormula {
    Translator::default().st(&Symbol::from(x), o, phi)
}

#[derive(Default)]
struct Translator {
    next: usize,
}

impl Translator {
    fn fresh(&mut self) -> Var {
        let v = Symbol::from(format!("{DESIGNATED}{}", self.next));
        self.next += 1;
        v
    }

    fn st(&mut self, x: &Var, o: &IndexSequence, phi: &LdFormula) -> FolFormula {
        match phi {
            LdFormula::Atom(p) => FolFormula::Pred(p.clone(), x.clone()),
            LdFormula::Top => FolFormula::Eq(x.clone(), x.clone()),
            LdFormula::Not(a) => FolFormula::not(self.st(x, o, a)),
            LdFormula::And(a, b) => {
                let a = self.st(x, o, a);
                FolFormula::and(a, self.st(x, o, b))
            }
            LdFormula::Box(a) => {
                let y = self.fresh();
                let mut parts = vec![FolFormula::Rel(x.clone(), y.clone())];
                parts.extend(self.live_guards(x, &y, o));
                parts.push(FolFormula::not(self.st(&y, o, a)));
                let body = FolFormula::conjunction(parts).expect("non-empty");
                FolFormula::not(FolFormula::exists(y, body))
            }
            LdFormula::Del(g, b) => self.st(x, &o.push(x.clone(), (**g).clone()), b),
        }
    }

    /// `¬(x = v_i ∧ ST_y(ψ_i))` for every entry of `o`, each guard read
    /// under the entries before it.
    fn live_guards(&mut self, x: &Var, y: &Var, o: &IndexSequence) -> Vec<FolFormula> {
        let entries = o.entries();
        (0..entries.len())
            .map(|i| {
                let (v, psi) = &entries[i];
                let earlier = o.prefix(i.max(1));
                let cut = self.st(y, &earlier, psi);
                FolFormula::not(FolFormula::and(FolFormula::Eq(x.clone(), v.clone()), cut))
            })
            .collect()
    }
}
