use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{Assignment, EvalError};
use crate::checker::cache_cap_from_env;
use crate::formula::{HybridFormula, Symbol};
use crate::kripke::{KripkeModel, ModelState};
use crate::worldset::{World, WorldSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Atom(u32),
    Top,
    Not(u32),
    And(u32, u32),
    Box(u32),
    Del(u32, u32),
    Nom(u16),
    At(u16, u32),
    Down(u16, u32),
}

/// Most nominal slots that fit in a packed cache key.
const PACKED_SLOTS: usize = 128 / 7;

/// Evaluator for the deletion language extended with nominals, `@` and
/// `↓`. Deletions follow the local semantics.
pub struct HybridEvaluator {
    nodes: Vec<Node>,
    free: Vec<Vec<u16>>,
    index: FxHashMap<Node, u32>,
    slots: Vec<Symbol>,
    atoms: Vec<Symbol>,
    atom_vals: Vec<WorldSet>,
    model: Arc<KripkeModel>,
    full: WorldSet,
    states: Vec<Box<[WorldSet]>>,
    state_index: FxHashMap<Box<[WorldSet]>, u32>,
    cache: FxHashMap<(u32, u32, u128), WorldSet>,
    cap: Option<usize>,
}

impl HybridEvaluator {
    pub fn new(model: Arc<KripkeModel>) -> HybridEvaluator {
        let mut e = HybridEvaluator {
            nodes: Vec::new(),
            free: Vec::new(),
            index: FxHashMap::default(),
            slots: Vec::new(),
            atoms: Vec::new(),
            atom_vals: Vec::new(),
            full: model.all_worlds(),
            model,
            states: Vec::new(),
            state_index: FxHashMap::default(),
            cache: FxHashMap::default(),
            cap: cache_cap_from_env(),
        };
        e.reset();
        e
    }

    pub fn set_model(&mut self, model: Arc<KripkeModel>) {
        self.full = model.all_worlds();
        self.model = model;
        self.reset();
    }

    fn reset(&mut self) {
        self.atom_vals = self.atoms.iter().map(|a| self.model.valuation(a)).collect();
        self.states.clear();
        self.state_index.clear();
        self.cache.clear();
        self.intern(self.model.rows().into());
    }

    fn intern(&mut self, rows: Box<[WorldSet]>) -> u32 {
        if let Some(&id) = self.state_index.get(&rows) {
            return id;
        }
        let id = self.states.len() as u32;
        self.states.push(rows.clone());
        self.state_index.insert(rows, id);
        id
    }

    fn slot(&mut self, x: &Symbol) -> u16 {
        match self.slots.iter().position(|s| s == x) {
            Some(i) => i as u16,
            None => {
                self.slots.push(x.clone());
                (self.slots.len() - 1) as u16
            }
        }
    }

    fn compile(&mut self, f: &HybridFormula) -> u32 {
        let node = match f {
            HybridFormula::Atom(a) => {
                let k = match self.atoms.iter().position(|b| b == a) {
                    Some(k) => k,
                    None => {
                        self.atoms.push(a.clone());
                        self.atom_vals.push(self.model.valuation(a));
                        self.atoms.len() - 1
                    }
                };
                Node::Atom(k as u32)
            }
            HybridFormula::Top => Node::Top,
            HybridFormula::Not(a) => Node::Not(self.compile(a)),
            HybridFormula::And(a, b) => {
                let a = self.compile(a);
                Node::And(a, self.compile(b))
            }
            HybridFormula::Box(a) => Node::Box(self.compile(a)),
            HybridFormula::Del(a, b) => {
                let a = self.compile(a);
                Node::Del(a, self.compile(b))
            }
            HybridFormula::Nom(x) => Node::Nom(self.slot(x)),
            HybridFormula::At(x, a) => {
                let s = self.slot(x);
                Node::At(s, self.compile(a))
            }
            HybridFormula::Down(x, a) => {
                let s = self.slot(x);
                Node::Down(s, self.compile(a))
            }
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let merge = |a: &[u16], b: &[u16]| {
            let mut v = a.to_vec();
            v.extend_from_slice(b);
            v.sort_unstable();
            v.dedup();
            v
        };
        let free = match node {
            Node::Atom(_) | Node::Top => Vec::new(),
            Node::Nom(s) => vec![s],
            Node::Not(a) | Node::Box(a) => self.free[a as usize].clone(),
            Node::And(a, b) | Node::Del(a, b) => merge(&self.free[a as usize], &self.free[b as usize]),
            Node::At(s, a) => merge(&[s], &self.free[a as usize]),
            Node::Down(s, a) => self.free[a as usize].iter().copied().filter(|&t| t != s).collect(),
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.free.push(free);
        self.index.insert(node, id);
        id
    }

    /// Worlds satisfying `f` in `state` under `a`, which must name every
    /// free nominal.
    pub fn extension(&mut self, state: &ModelState, a: &Assignment, f: &HybridFormula) -> Result<WorldSet, EvalError> {
        assert!(**state.base() == *self.model, "state belongs to a different model");
        let root = self.compile(f);
        let mut env = vec![usize::MAX; self.slots.len()];
        for &s in &self.free[root as usize] {
            let x = &self.slots[s as usize];
            let w = a.get(x).ok_or_else(|| EvalError::UnboundNominal(x.to_string()))?;
            if w.index() >= self.model.len() {
                return Err(EvalError::WorldOutOfRange(w.index()));
            }
            env[s as usize] = w.index();
        }
        let rows: Box<[WorldSet]> = self.model.worlds().map(|w| state.successors(w)).collect();
        let sid = self.intern(rows);
        Ok(self.ext(sid, root, &mut env))
    }

    pub fn eval(&mut self, state: &ModelState, w: World, a: &Assignment, f: &HybridFormula) -> Result<bool, EvalError> {
        Ok(self.extension(state, a, f)?.contains(w))
    }

    fn key(&self, node: u32, env: &[usize]) -> Option<u128> {
        let free = &self.free[node as usize];
        if free.len() > PACKED_SLOTS {
            return None;
        }
        let mut k = 0u128;
        for &s in free {
            k = (k << 7) | env[s as usize] as u128;
        }
        Some(k)
    }

    fn ext(&mut self, sid: u32, node: u32, env: &mut Vec<usize>) -> WorldSet {
        let n = self.nodes[node as usize];
        match n {
            Node::Atom(k) => return self.atom_vals[k as usize],
            Node::Top => return self.full,
            Node::Nom(s) => return WorldSet::singleton(World(env[s as usize])),
            _ => {}
        }
        let key = self.key(node, env);
        if let Some(k) = key {
            if let Some(&hit) = self.cache.get(&(sid, node, k)) {
                return hit;
            }
        }
        let out = match n {
            Node::Atom(_) | Node::Top | Node::Nom(_) => unreachable!(),
            Node::Not(a) => self.full.difference(self.ext(sid, a, env)),
            Node::And(a, b) => {
                let left = self.ext(sid, a, env);
                if left.is_empty() {
                    left
                } else {
                    left.intersection(self.ext(sid, b, env))
                }
            }
            Node::Box(a) => {
                let inner = self.ext(sid, a, env);
                let rows = &self.states[sid as usize];
                (0..rows.len())
                    .filter(|&w| rows[w].is_subset(inner))
                    .map(World)
                    .collect()
            }
            Node::At(s, a) => {
                if self.ext(sid, a, env).contains(World(env[s as usize])) {
                    self.full
                } else {
                    WorldSet::EMPTY
                }
            }
            Node::Down(s, a) => {
                let saved = env[s as usize];
                let mut out = WorldSet::EMPTY;
                for w in 0..self.model.len() {
                    env[s as usize] = w;
                    if self.ext(sid, a, env).contains(World(w)) {
                        out.insert(World(w));
                    }
                }
                env[s as usize] = saved;
                out
            }
            Node::Del(g, b) => {
                let guard = self.ext(sid, g, env);
                let mut out = WorldSet::EMPTY;
                for w in 0..self.model.len() {
                    let row = self.states[sid as usize][w];
                    let cut = row.intersection(guard);
                    let next = if cut.is_empty() {
                        sid
                    } else {
                        let mut rows = self.states[sid as usize].clone();
                        rows[w] = row.difference(cut);
                        self.intern(rows)
                    };
                    if self.ext(next, b, env).contains(World(w)) {
                        out.insert(World(w));
                    }
                }
                out
            }
        };
        if let Some(k) = key {
            if self.cap.is_some_and(|cap| self.cache.len() >= cap) {
                self.cache.clear();
            }
            self.cache.insert((sid, node, k), out);
        }
        out
    }
}

/// One-shot evaluation at `w`.
pub fn eval_hybrid(state: &ModelState, w: World, a: &Assignment, f: &HybridFormula) -> Result<bool, EvalError> {
    HybridEvaluator::new(state.base().clone()).eval(state, w, a, f)
}
