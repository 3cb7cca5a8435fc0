use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{EquivError, EquivVerdict, Outcome};
use crate::checker::{Checker, Semantics};
use crate::formula::{metrics, LdFormula, Symbol};
use crate::kripke::{EdgeIndex, PointedModel};
use crate::worldset::{World, WorldSet};

/// Search bounds for [`bounded_ld_equiv`].
#[derive(Clone, Debug)]
pub struct FormulaBounds {
    pub max_size: usize,
    pub max_del_depth: usize,
    /// Cap on deletion states summed over both models.
    pub max_states: u128,
    /// Cap on formulas kept after deduplication.
    pub max_formulas: usize,
}

impl Default for FormulaBounds {
    fn default() -> Self {
        FormulaBounds {
            max_size: 8,
            max_del_depth: 2,
            max_states: 1 << 18,
            max_formulas: 2_000_000,
        }
    }
}

type Sig = Arc<[u64]>;

struct Side {
    idx: EdgeIndex,
    n: usize,
    full: WorldSet,
    rows: Vec<WorldSet>,
    states: usize,
    offset: usize,
}

struct Entry {
    formula: LdFormula,
    sig: Sig,
    del_depth: usize,
}

struct Oracle<'a> {
    sides: [Side; 2],
    width: usize,
    points: [World; 2],
    seen: FxHashMap<Sig, usize>,
    bounds: &'a FormulaBounds,
    kept: usize,
}

impl Oracle<'_> {
    fn sig_of(&self, mut word: impl FnMut(&Side, usize) -> u64) -> Sig {
        let mut out = vec![0u64; self.width];
        for side in &self.sides {
            for s in 0..side.states {
                out[side.offset + s] = word(side, s);
            }
        }
        out.into()
    }

    fn not(&self, a: &Sig) -> Sig {
        self.sig_of(|side, s| side.full.bits() & !a[side.offset + s])
    }

    fn and(&self, a: &Sig, b: &Sig) -> Sig {
        self.sig_of(|side, s| a[side.offset + s] & b[side.offset + s])
    }

    fn boxed(&self, a: &Sig) -> Sig {
        self.sig_of(|side, s| {
            let inner = WorldSet(a[side.offset + s]);
            let rows = &side.rows[s * side.n..(s + 1) * side.n];
            (0..side.n)
                .filter(|&w| rows[w].is_subset(inner))
                .fold(0, |acc, w| acc | 1 << w)
        })
    }

    fn del(&self, g: &Sig, b: &Sig) -> Sig {
        self.sig_of(|side, s| {
            let guard = WorldSet(g[side.offset + s]);
            let mut word = 0;
            for w in 0..side.n {
                let cut = side.rows[s * side.n + w].intersection(guard);
                let next = side.idx.delete_from(s as u64, World(w), cut) as usize;
                if b[side.offset + next] & (1 << w) != 0 {
                    word |= 1 << w;
                }
            }
            word
        })
    }

    fn separates(&self, sig: &Sig) -> bool {
        let a = sig[self.sides[0].offset] & (1 << self.points[0].0) != 0;
        let b = sig[self.sides[1].offset] & (1 << self.points[1].0) != 0;
        a != b
    }

    /// Keep `sig` unless an equal signature is already kept at no greater
    /// deletion depth.
    fn admit(&mut self, sig: &Sig, del_depth: usize) -> Result<bool, EquivError> {
        match self.seen.get(sig) {
            Some(&d) if d <= del_depth => Ok(false),
            _ => {
                self.seen.insert(sig.clone(), del_depth);
                self.kept += 1;
                if self.kept > self.bounds.max_formulas {
                    return Err(EquivError::TooLarge {
                        what: "kept formulas",
                        count: self.kept as u128,
                        cap: self.bounds.max_formulas as u128,
                    });
                }
                Ok(true)
            }
        }
    }
}

/// Search `L_d` formulas over `atoms` by increasing size for one that
/// separates the two pointed models.
///
/// Formulas are identified by their truth table over every deletion state
/// (every subset of edges) of both models; a formula whose table was
/// already produced at no greater deletion depth is dropped, which loses
/// nothing because truth in any context depends only on that table. The
/// witness is the smallest separating formula, ties broken by printed
/// form, negated if needed so that it holds at the left point, and is
/// re-checked with the model checker before it is returned.
pub fn bounded_ld_equiv<S: AsRef<str>>(
    left: &PointedModel,
    right: &PointedModel,
    atoms: &[S],
    bounds: &FormulaBounds,
) -> Result<EquivVerdict, EquivError> {
    let models = [&left.model, &right.model];
    let mut sides = Vec::with_capacity(2);
    let mut offset = 0usize;
    let mut total: u128 = 0;
    for m in models {
        let idx = EdgeIndex::new(m)?;
        total += idx.state_count();
        if total > bounds.max_states {
            return Err(EquivError::TooLarge {
                what: "deletion states",
                count: total,
                cap: bounds.max_states,
            });
        }
        let states = idx.state_count() as usize;
        let rows = (0..states as u64).flat_map(|s| idx.rows(s)).collect();
        sides.push(Side {
            n: m.len(),
            full: m.all_worlds(),
            idx,
            rows,
            states,
            offset,
        });
        offset += states;
    }
    let sides: [Side; 2] = sides.try_into().ok().expect("two sides");
    let mut oracle = Oracle {
        sides,
        width: offset,
        points: [left.point, right.point],
        seen: FxHashMap::default(),
        bounds,
        kept: 0,
    };

    let mut atom_names: Vec<Symbol> = atoms.iter().map(|a| Symbol::from(a.as_ref())).collect();
    atom_names.sort();
    atom_names.dedup();

    // levels[k] holds kept formulas of size k
    let mut levels: Vec<Vec<Entry>> = vec![Vec::new(), Vec::new()];
    let mut witnesses: Vec<LdFormula> = Vec::new();
    let mut base = vec![(LdFormula::Top, oracle.sig_of(|side, _| side.full.bits()))];
    for a in &atom_names {
        let vals = [models[0].valuation(a), models[1].valuation(a)];
        let sig = oracle.sig_of(|side, _| vals[usize::from(side.offset != 0)].bits());
        base.push((LdFormula::Atom(a.clone()), sig));
    }
    for (f, sig) in base {
        if oracle.separates(&sig) {
            witnesses.push(f.clone());
        }
        if oracle.admit(&sig, 0)? {
            levels[1].push(Entry {
                formula: f,
                sig,
                del_depth: 0,
            });
        }
    }

    let mut size = 1;
    while witnesses.is_empty() && size < bounds.max_size {
        size += 1;
        let mut level = Vec::new();
        let mut consider = |oracle: &mut Oracle, f: LdFormula, sig: Sig, dd: usize, alt: Option<LdFormula>| {
            if oracle.separates(&sig) {
                witnesses.push(f.clone());
                witnesses.extend(alt);
            }
            if oracle.admit(&sig, dd)? {
                level.push(Entry {
                    formula: f,
                    sig,
                    del_depth: dd,
                });
            }
            Ok::<(), EquivError>(())
        };
        for e in &levels[size - 1] {
            let sig = oracle.not(&e.sig);
            consider(&mut oracle, LdFormula::not(e.formula.clone()), sig, e.del_depth, None)?;
            let sig = oracle.boxed(&e.sig);
            consider(&mut oracle, LdFormula::boxed(e.formula.clone()), sig, e.del_depth, None)?;
        }
        for i in 1..size - 1 {
            let j = size - 1 - i;
            for (ai, a) in levels[i].iter().enumerate() {
                if i <= j {
                    let start = if i == j { ai } else { 0 };
                    for b in &levels[j][start..] {
                        let sig = oracle.and(&a.sig, &b.sig);
                        let f = LdFormula::and(a.formula.clone(), b.formula.clone());
                        let alt = LdFormula::and(b.formula.clone(), a.formula.clone());
                        consider(&mut oracle, f, sig, a.del_depth.max(b.del_depth), Some(alt))?;
                    }
                }
                for b in &levels[j] {
                    let dd = 1 + a.del_depth.max(b.del_depth);
                    if dd > bounds.max_del_depth {
                        continue;
                    }
                    let sig = oracle.del(&a.sig, &b.sig);
                    consider(
                        &mut oracle,
                        LdFormula::del(a.formula.clone(), b.formula.clone()),
                        sig,
                        dd,
                        None,
                    )?;
                }
            }
        }
        levels.push(level);
    }

    if witnesses.is_empty() {
        return Ok(EquivVerdict {
            outcome: Outcome::EquivalentUpToBound,
            witness: None,
            detail: Some(format!(
                "no formula of size <= {} and deletion depth <= {} separates the points",
                bounds.max_size, bounds.max_del_depth
            )),
            explored: oracle.kept,
        });
    }
    let witness = witnesses
        .into_iter()
        .map(|f| (f.to_string(), f))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, f)| f)
        .expect("non-empty");
    let holds = |pm: &PointedModel, f: &LdFormula| {
        Checker::new(pm.model.clone(), Semantics::Local)
            .holds(pm.point, f)
            .map_err(|_| EquivError::WitnessRejected(f.to_string()))
    };
    // orient the witness so it holds at the left point
    let witness = if holds(left, &witness)? {
        witness
    } else {
        LdFormula::not(witness)
    };
    if !holds(left, &witness)? || holds(right, &witness)? {
        return Err(EquivError::WitnessRejected(witness.to_string()));
    }
    let m = metrics(&witness);
    Ok(EquivVerdict {
        outcome: Outcome::Distinguished,
        detail: Some(format!(
            "true on the left side only; size {}, deletion depth {}",
            m.size, m.del_depth
        )),
        witness: Some(witness),
        explored: oracle.kept,
    })
}
