//! Model checking under local and global deletion semantics.
//!
//! [`Checker`] computes extensions over a hash-consed formula DAG and
//! memoizes them per (deletion state, node). [`eval_direct`] is a plain
//! pointwise evaluator that follows the satisfaction clauses literally; it
//! is slower and serves as the reference the memoized checker is tested
//! against.

mod program;
mod trace;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::LdFormula;
use crate::kripke::{KripkeModel, ModelError, ModelState};
use crate::worldset::{World, WorldSet};

pub use program::Program;
use program::{Node, NodeId};
pub use trace::{trace, TraceNode};

/// Environment variable bounding the number of memoized extensions.
pub const CACHE_CAP_ENV: &str = "SDML_CACHE_CAP";

/// Which links a deletion removes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    /// Links from the evaluation world only.
    #[default]
    Local,
    /// Links from every world.
    Global,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Local => "local",
            Semantics::Global => "global",
        })
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "local" => Ok(Semantics::Local),
            "global" => Ok(Semantics::Global),
            _ => Err(format!("unknown semantics '{s}' (expected local or global)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("atom '{0}' is not declared by the model")]
    UnknownAtom(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Cache bound read from [`CACHE_CAP_ENV`], if set to a number.
pub fn cache_cap_from_env() -> Option<usize> {
    std::env::var(CACHE_CAP_ENV).ok()?.trim().parse().ok()
}

/// Memoizing model checker for one model at a time.
///
/// The compiled program survives [`Checker::set_model`], so sweeping many
/// models with the same formulas compiles them once.
pub struct Checker {
    program: Program,
    model: Arc<KripkeModel>,
    semantics: Semantics,
    strict: bool,
    cap: Option<usize>,
    atom_vals: Vec<Option<WorldSet>>,
    states: Vec<Box<[WorldSet]>>,
    state_index: FxHashMap<Box<[WorldSet]>, u32>,
    cache: FxHashMap<(u32, NodeId), WorldSet>,
    full: WorldSet,
}

impl Checker {
    pub fn new(model: Arc<KripkeModel>, semantics: Semantics) -> Checker {
        let mut c = Checker {
            program: Program::new(),
            full: model.all_worlds(),
            model,
            semantics,
            strict: false,
            cap: cache_cap_from_env(),
            atom_vals: Vec::new(),
            states: Vec::new(),
            state_index: FxHashMap::default(),
            cache: FxHashMap::default(),
        };
        c.reset();
        c
    }

    /// Reject atoms the model does not declare instead of reading them as
    /// false.
    pub fn strict(mut self, strict: bool) -> Checker {
        self.strict = strict;
        self
    }

    pub fn with_cache_cap(mut self, cap: Option<usize>) -> Checker {
        self.cap = cap;
        self
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn model(&self) -> &Arc<KripkeModel> {
        &self.model
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    /// Switch to another model, dropping all cached extensions.
    pub fn set_model(&mut self, model: Arc<KripkeModel>) {
        self.full = model.all_worlds();
        self.model = model;
        self.reset();
    }

    pub fn set_semantics(&mut self, semantics: Semantics) {
        if semantics != self.semantics {
            self.semantics = semantics;
            self.cache.clear();
        }
    }

    fn reset(&mut self) {
        self.atom_vals.clear();
        self.resolve_atoms();
        self.states.clear();
        self.state_index.clear();
        self.cache.clear();
        let base: Box<[WorldSet]> = self.model.rows().into();
        self.state_index.insert(base.clone(), 0);
        self.states.push(base);
    }

    fn resolve_atoms(&mut self) {
        for a in &self.program.atoms[self.atom_vals.len()..] {
            let k = self.model.atom_index(a);
            self.atom_vals.push(k.map(|k| self.model.valuation_at(k)));
        }
    }

    /// Number of memoized extensions.
    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// Number of distinct deletion states visited.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    fn prepare(&mut self, f: &LdFormula) -> Result<NodeId, CheckError> {
        if self.strict {
            for a in f.atoms() {
                if !self.model.has_atom(&a) {
                    return Err(CheckError::UnknownAtom(a.to_string()));
                }
            }
        }
        let root = self.program.compile(f);
        self.resolve_atoms();
        Ok(root)
    }

    fn state_id(&mut self, state: &ModelState) -> u32 {
        assert!(
            Arc::ptr_eq(state.base(), &self.model) || **state.base() == *self.model,
            "state belongs to a different model"
        );
        let live: Vec<WorldSet> = self.model.worlds().map(|w| state.successors(w)).collect();
        self.intern(live.into_boxed_slice())
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

    /// Worlds satisfying `f` in `state`.
    pub fn extension(&mut self, state: &ModelState, f: &LdFormula) -> Result<WorldSet, CheckError> {
        let root = self.prepare(f)?;
        let sid = self.state_id(state);
        Ok(self.ext(sid, root))
    }

    /// Worlds satisfying `f` in the unmodified model.
    pub fn extension_at_base(&mut self, f: &LdFormula) -> Result<WorldSet, CheckError> {
        let root = self.prepare(f)?;
        Ok(self.ext(0, root))
    }

    pub fn eval(&mut self, state: &ModelState, w: World, f: &LdFormula) -> Result<bool, CheckError> {
        Ok(self.extension(state, f)?.contains(w))
    }

    /// Truth of `f` at `w` in the unmodified model.
    pub fn holds(&mut self, w: World, f: &LdFormula) -> Result<bool, CheckError> {
        Ok(self.extension_at_base(f)?.contains(w))
    }

    fn ext(&mut self, sid: u32, node: NodeId) -> WorldSet {
        let n = self.program.nodes[node as usize];
        match n {
            Node::Atom(k) => return self.atom_vals[k as usize].unwrap_or(WorldSet::EMPTY),
            Node::Top => return self.full,
            _ => {}
        }
        if let Some(&hit) = self.cache.get(&(sid, node)) {
            return hit;
        }
        let out = match n {
            Node::Atom(_) | Node::Top => unreachable!(),
            Node::Not(a) => self.full.difference(self.ext(sid, a)),
            Node::And(a, b) => {
                let left = self.ext(sid, a);
                if left.is_empty() {
                    left
                } else {
                    left.intersection(self.ext(sid, b))
                }
            }
            Node::Box(a) => {
                let inner = self.ext(sid, a);
                let rows = &self.states[sid as usize];
                (0..rows.len())
                    .filter(|&w| rows[w].is_subset(inner))
                    .map(World)
                    .collect()
            }
            Node::Del(g, b) => {
                let guard = self.ext(sid, g);
                match self.semantics {
                    Semantics::Global => {
                        let rows: Box<[WorldSet]> =
                            self.states[sid as usize].iter().map(|r| r.difference(guard)).collect();
                        let next = self.intern(rows);
                        self.ext(next, b)
                    }
                    Semantics::Local => self.local_del(sid, guard, b),
                }
            }
        };
        if let Some(cap) = self.cap {
            if self.cache.len() >= cap {
                self.cache.clear();
            }
        }
        self.cache.insert((sid, node), out);
        out
    }

    fn local_del(&mut self, sid: u32, guard: WorldSet, body: NodeId) -> WorldSet {
        let mut out = WorldSet::EMPTY;
        let mut unchanged: Option<WorldSet> = None;
        for w in 0..self.states[sid as usize].len() {
            let row = self.states[sid as usize][w];
            let cut = row.intersection(guard);
            let truth = if cut.is_empty() {
                let e = match unchanged {
                    Some(e) => e,
                    None => {
                        let e = self.ext(sid, body);
                        unchanged = Some(e);
                        e
                    }
                };
                e.contains(World(w))
            } else {
                let mut rows = self.states[sid as usize].clone();
                rows[w] = row.difference(cut);
                let next = self.intern(rows);
                self.ext(next, body).contains(World(w))
            };
            if truth {
                out.insert(World(w));
            }
        }
        out
    }
}

/// Reference evaluator: the satisfaction clauses applied pointwise with no
/// sharing or caching.
pub fn eval_direct(
    state: &ModelState,
    w: World,
    f: &LdFormula,
    semantics: Semantics,
    strict: bool,
) -> Result<bool, CheckError> {
    Ok(match f {
        LdFormula::Atom(a) => {
            let m = state.base();
            if strict && !m.has_atom(a) {
                return Err(CheckError::UnknownAtom(a.to_string()));
            }
            m.valuation(a).contains(w)
        }
        LdFormula::Top => true,
        LdFormula::Not(a) => !eval_direct(state, w, a, semantics, strict)?,
        LdFormula::And(a, b) => {
            eval_direct(state, w, a, semantics, strict)? && eval_direct(state, w, b, semantics, strict)?
        }
        LdFormula::Box(a) => {
            for v in state.successors(w) {
                if !eval_direct(state, v, a, semantics, strict)? {
                    return Ok(false);
                }
            }
            true
        }
        LdFormula::Del(g, b) => {
            let next = deletion_step(state, w, g, semantics, strict)?.0;
            eval_direct(&next, w, b, semantics, strict)?
        }
    })
}

/// The state reached by evaluating `[-guard]` at `w`, with the guard's
/// extension over the worlds that matter for the deletion.
pub(crate) fn deletion_step(
    state: &ModelState,
    w: World,
    guard: &LdFormula,
    semantics: Semantics,
    strict: bool,
) -> Result<(ModelState, WorldSet), CheckError> {
    let candidates = match semantics {
        Semantics::Local => state.successors(w),
        Semantics::Global => state.base().all_worlds(),
    };
    let mut ext = WorldSet::EMPTY;
    for v in candidates {
        if eval_direct(state, v, guard, semantics, strict)? {
            ext.insert(v);
        }
    }
    let next = match semantics {
        Semantics::Local => state.delete_from(w, ext),
        Semantics::Global => state.delete_global(ext),
    };
    Ok((next, ext))
}

/// One-shot evaluation at a named world of the unmodified model.
pub fn check(model: &Arc<KripkeModel>, world: &str, f: &LdFormula, semantics: Semantics) -> Result<bool, CheckError> {
    let w = model.world(world)?;
    Checker::new(model.clone(), semantics).holds(w, f)
}
