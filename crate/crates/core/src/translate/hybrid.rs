use crate::formula::{HybridFormula, IndexSequence, LdFormula, Symbol};

/// Hybrid translation of `φ` with seed `⟨x, false⟩`. The result has no
/// deletion operators and no free nominals.
///
/// The seed entry names the world a `◇` starts from, so its nominal is
/// rendered as that `◇`'s own binder; the seed guard is `false`, making the
/// conjunct trivially true either way.
pub fn hybrid_translate(phi: &LdFormula) -> HybridFormula {
    let seed = IndexSequence::seed(Symbol::from(SEED));
    Translator::default().t(&seed, phi)
}

const SEED: &str = "x";

#[derive(Default)]
struct Translator {
    next: usize,
}

impl Translator {
    fn fresh(&mut self) -> Symbol {
        let v = Symbol::from(format!("x{}", self.next));
        self.next += 1;
        v
    }

    fn t(&mut self, o: &IndexSequence, phi: &LdFormula) -> HybridFormula {
        match phi {
            LdFormula::Atom(p) => HybridFormula::Atom(p.clone()),
            LdFormula::Top => HybridFormula::Top,
            LdFormula::Not(a) => HybridFormula::not(self.t(o, a)),
            LdFormula::And(a, b) => {
                let a = self.t(o, a);
                HybridFormula::and(a, self.t(o, b))
            }
            LdFormula::Box(a) => {
                let here = self.fresh();
                let mut parts = self.live_guards(&here, o);
                parts.push(HybridFormula::not(self.t(o, a)));
                let body = HybridFormula::not(HybridFormula::conjunction(parts));
                HybridFormula::down(here, HybridFormula::boxed(body))
            }
            LdFormula::Del(g, b) => {
                let here = self.fresh();
                let inner = self.t(&o.push(here.clone(), (**g).clone()), b);
                HybridFormula::down(here, inner)
            }
        }
    }

    fn live_guards(&mut self, here: &Symbol, o: &IndexSequence) -> Vec<HybridFormula> {
        let entries = o.entries();
        (0..entries.len())
            .map(|i| {
                let (v, psi) = &entries[i];
                let v = if i == 0 { here.clone() } else { v.clone() };
                let cut = self.t(&o.prefix(i.max(1)), psi);
                let at = HybridFormula::at(here.clone(), HybridFormula::Nom(v));
                HybridFormula::not(HybridFormula::and(at, cut))
            })
            .collect()
    }
}

/// `↓x(◇↓x1(@x◇↓x2(... @x◇↓xn(@x□(x1 ∨ ... ∨ xn ∧ ⋀ ¬@xi xj)))))`: true
/// exactly at worlds with `n` successors. `n = 0` gives `□false`.
pub fn n_successors(n: usize) -> HybridFormula {
    if n == 0 {
        return HybridFormula::boxed(HybridFormula::bot());
    }
    let x = Symbol::from("x");
    let name = |i: usize| Symbol::from(format!("x{i}"));
    let cover = HybridFormula::disjunction((1..=n).map(|i| HybridFormula::Nom(name(i))));
    let distinct = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .map(|(i, j)| HybridFormula::not(HybridFormula::at(name(i), HybridFormula::Nom(name(j)))));
    let inner: Vec<HybridFormula> = std::iter::once(cover).chain(distinct).collect();
    let mut f = HybridFormula::at(x.clone(), HybridFormula::boxed(HybridFormula::conjunction(inner)));
    for i in (1..=n).rev() {
        f = HybridFormula::diamond(HybridFormula::down(name(i), f));
        if i > 1 {
            f = HybridFormula::at(x.clone(), f);
        }
    }
    HybridFormula::down(x, f)
}
