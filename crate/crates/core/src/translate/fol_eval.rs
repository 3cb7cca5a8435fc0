use std::collections::BTreeMap;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use super::EvalError;
use crate::formula::{FolFormula, Symbol, Var};
use crate::kripke::KripkeModel;
use crate::worldset::{World, WorldSet, MAX_WORLDS};

/// Values for free variables (first-order) or free nominals (hybrid).
pub type Assignment = BTreeMap<Symbol, World>;

/// Bound on the truth table of any single subformula.
pub const TABLE_CAP: usize = 1 << 24;

const BOUND: u16 = u16::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Pred(u32, u16),
    Rel(u16, u16),
    Eq(u16, u16),
    Not(u32),
    And(u32, u32),
    Exists(u16, u32),
}

/// A first-order formula compiled for repeated evaluation over finite
/// structures.
///
/// Each subformula gets a truth table over assignments to its own free
/// variables, filled bottom-up, so cost per model is the sum of
/// `|W|^k` over subformulas with `k` free variables.
pub struct FolEvaluator {
    nodes: Vec<Node>,
    free: Vec<Vec<u16>>,
    /// Per node and operand: for each operand position, the matching
    /// position in the node's own free list, or `BOUND`.
    maps: Vec<Vec<Vec<u16>>>,
    index: FxHashMap<Node, u32>,
    slots: Vec<Var>,
    atoms: Vec<Symbol>,
    root: u32,
    plans: Vec<OnceLock<Plan>>,
}

/// Cell layout for one domain size: where each operand cell lives in the
/// concatenated tables.
struct Plan {
    steps: Vec<Step>,
    base: Vec<usize>,
    total: usize,
}

enum Step {
    Pred(usize, Vec<usize>),
    Rel(Vec<usize>, Vec<usize>),
    Const(Vec<bool>),
    Not(Vec<usize>),
    And(Vec<usize>, Vec<usize>),
    Exists(Vec<usize>, usize, usize),
}

impl FolEvaluator {
    pub fn new(f: &FolFormula) -> FolEvaluator {
        let mut e = FolEvaluator {
            nodes: Vec::new(),
            free: Vec::new(),
            maps: Vec::new(),
            index: FxHashMap::default(),
            slots: Vec::new(),
            atoms: Vec::new(),
            root: 0,
            plans: (0..=MAX_WORLDS).map(|_| OnceLock::new()).collect(),
        };
        e.root = e.compile(f);
        e
    }

    /// Free variables of the compiled formula.
    pub fn free_variables(&self) -> Vec<&Var> {
        self.free[self.root as usize]
            .iter()
            .map(|&s| &self.slots[s as usize])
            .collect()
    }

    fn slot(&mut self, v: &Var) -> u16 {
        match self.slots.iter().position(|s| s == v) {
            Some(i) => i as u16,
            None => {
                self.slots.push(v.clone());
                (self.slots.len() - 1) as u16
            }
        }
    }

    fn compile(&mut self, f: &FolFormula) -> u32 {
        let node = match f {
            FolFormula::Pred(p, v) => {
                let k = match self.atoms.iter().position(|a| a == p) {
                    Some(k) => k,
                    None => {
                        self.atoms.push(p.clone());
                        self.atoms.len() - 1
                    }
                };
                Node::Pred(k as u32, self.slot(v))
            }
            FolFormula::Rel(a, b) => Node::Rel(self.slot(a), self.slot(b)),
            FolFormula::Eq(a, b) => Node::Eq(self.slot(a), self.slot(b)),
            FolFormula::Not(a) => Node::Not(self.compile(a)),
            FolFormula::And(a, b) => {
                let a = self.compile(a);
                Node::And(a, self.compile(b))
            }
            FolFormula::Exists(v, a) => {
                let s = self.slot(v);
                Node::Exists(s, self.compile(a))
            }
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let free = match node {
            Node::Pred(_, s) => vec![s],
            Node::Rel(a, b) | Node::Eq(a, b) => {
                let mut v = vec![a, b];
                v.sort_unstable();
                v.dedup();
                v
            }
            Node::Not(a) => self.free[a as usize].clone(),
            Node::And(a, b) => {
                let mut v = self.free[a as usize].clone();
                v.extend_from_slice(&self.free[b as usize]);
                v.sort_unstable();
                v.dedup();
                v
            }
            Node::Exists(s, a) => self.free[a as usize].iter().copied().filter(|&t| t != s).collect(),
        };
        let locate = |vars: &[u16]| -> Vec<u16> {
            vars.iter()
                .map(|v| free.iter().position(|f| f == v).map_or(BOUND, |p| p as u16))
                .collect()
        };
        let maps = match node {
            Node::Pred(_, s) => vec![locate(&[s])],
            Node::Rel(a, b) | Node::Eq(a, b) => vec![locate(&[a, b])],
            Node::Not(a) | Node::Exists(_, a) => vec![locate(&self.free[a as usize])],
            Node::And(a, b) => vec![locate(&self.free[a as usize]), locate(&self.free[b as usize])],
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.free.push(free);
        self.maps.push(maps);
        self.index.insert(node, id);
        id
    }

    fn plan(&self, n: usize) -> Result<&Plan, EvalError> {
        for free in &self.free {
            n.checked_pow(free.len() as u32)
                .filter(|&l| l <= TABLE_CAP)
                .ok_or(EvalError::TooLarge {
                    worlds: n,
                    variables: free.len(),
                })?;
        }
        Ok(self.plans[n].get_or_init(|| self.build_plan(n)))
    }

    fn build_plan(&self, n: usize) -> Plan {
        let widest = self.free.iter().map(Vec::len).max().unwrap_or(0);
        let mut digits = vec![0usize; widest];
        let mut base = Vec::with_capacity(self.nodes.len());
        let mut steps = Vec::with_capacity(self.nodes.len());
        let mut total = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            let k = self.free[i].len();
            let len = n.pow(k as u32);
            let maps = &self.maps[i];
            let mut cols: [Vec<usize>; 2] = [Vec::with_capacity(len), Vec::with_capacity(len)];
            let mut consts = Vec::new();
            let mut stride = 0;
            digits.fill(0);
            for _ in 0..len {
                match *node {
                    Node::Pred(..) => cols[0].push(digits[maps[0][0] as usize]),
                    Node::Rel(..) => {
                        cols[0].push(digits[maps[0][0] as usize]);
                        cols[1].push(digits[maps[0][1] as usize]);
                    }
                    Node::Eq(..) => consts.push(digits[maps[0][0] as usize] == digits[maps[0][1] as usize]),
                    Node::Not(a) | Node::Exists(_, a) => {
                        let (at, s) = offset(&maps[0], &digits, n);
                        cols[0].push(base[a as usize] + at);
                        stride = s.unwrap_or(0);
                    }
                    Node::And(a, b) => {
                        cols[0].push(base[a as usize] + offset(&maps[0], &digits, n).0);
                        cols[1].push(base[b as usize] + offset(&maps[1], &digits, n).0);
                    }
                }
                for d in digits[..k].iter_mut() {
                    *d += 1;
                    if *d < n {
                        break;
                    }
                    *d = 0;
                }
            }
            let [c0, c1] = cols;
            steps.push(match *node {
                Node::Pred(a, _) => Step::Pred(a as usize, c0),
                Node::Rel(..) => Step::Rel(c0, c1),
                Node::Eq(..) => Step::Const(consts),
                Node::Not(_) => Step::Not(c0),
                Node::And(..) => Step::And(c0, c1),
                Node::Exists(..) => {
                    let count = if maps[0].contains(&BOUND) { n } else { n.min(1) };
                    Step::Exists(c0, stride, count)
                }
            });
            base.push(total);
            total += len;
        }
        Plan { steps, base, total }
    }

    /// Truth tables of every node, concatenated, with each node's start.
    fn tables(&self, m: &KripkeModel) -> Result<(Vec<bool>, &[usize]), EvalError> {
        let plan = self.plan(m.len())?;
        let vals: Vec<WorldSet> = self.atoms.iter().map(|a| m.valuation(a)).collect();
        let mut data = vec![false; plan.total];
        for (step, &b) in plan.steps.iter().zip(&plan.base) {
            let (done, rest) = data.split_at_mut(b);
            match step {
                Step::Pred(a, ws) => {
                    for (out, &w) in rest.iter_mut().zip(ws) {
                        *out = vals[*a].contains(World(w));
                    }
                }
                Step::Rel(us, vs) => {
                    for (out, (&u, &v)) in rest.iter_mut().zip(us.iter().zip(vs)) {
                        *out = m.has_edge(World(u), World(v));
                    }
                }
                Step::Const(c) => rest[..c.len()].copy_from_slice(c),
                Step::Not(xs) => {
                    for (out, &x) in rest.iter_mut().zip(xs) {
                        *out = !done[x];
                    }
                }
                Step::And(xs, ys) => {
                    for (out, (&x, &y)) in rest.iter_mut().zip(xs.iter().zip(ys)) {
                        *out = done[x] && done[y];
                    }
                }
                Step::Exists(xs, stride, count) => {
                    for (out, &x) in rest.iter_mut().zip(xs) {
                        *out = (0..*count).any(|w| done[x + w * stride]);
                    }
                }
            }
        }
        Ok((data, &plan.base))
    }

    /// Truth under `a`, which must bind every free variable.
    pub fn eval(&self, m: &KripkeModel, a: &Assignment) -> Result<bool, EvalError> {
        let n = m.len();
        let mut env = vec![0usize; self.slots.len()];
        for &s in &self.free[self.root as usize] {
            let v = &self.slots[s as usize];
            let w = a.get(v).ok_or_else(|| EvalError::UnboundVariable(v.to_string()))?;
            if w.index() >= n {
                return Err(EvalError::WorldOutOfRange(w.index()));
            }
            env[s as usize] = w.index();
        }
        let (data, base) = self.tables(m)?;
        let at = self.free[self.root as usize]
            .iter()
            .rev()
            .fold(0, |acc, &s| acc * n + env[s as usize]);
        Ok(data[base[self.root as usize] + at])
    }

    /// Worlds `w` with `m ⊨ f[var ↦ w]`; every other free variable is an
    /// error.
    pub fn extension(&self, m: &KripkeModel, var: &str) -> Result<WorldSet, EvalError> {
        let free = &self.free[self.root as usize];
        if let Some(&s) = free.iter().find(|&&s| &*self.slots[s as usize] != var) {
            return Err(EvalError::UnboundVariable(self.slots[s as usize].to_string()));
        }
        let (data, base) = self.tables(m)?;
        let table = &data[base[self.root as usize]..];
        Ok(m.worlds()
            .filter(|w| if free.is_empty() { table[0] } else { table[w.index()] })
            .collect())
    }
}

/// Offset into an operand's table for the current digits, and the stride of
/// the operand's bound position if it has one.
fn offset(map: &[u16], digits: &[usize], n: usize) -> (usize, Option<usize>) {
    let mut at = 0;
    let mut stride = 1;
    let mut bound = None;
    for &p in map {
        if p == BOUND {
            bound = Some(stride);
        } else {
            at += digits[p as usize] * stride;
        }
        stride *= n;
    }
    (at, bound)
}

/// One-shot first-order evaluation.
pub fn eval_fol(m: &KripkeModel, a: &Assignment, f: &FolFormula) -> Result<bool, EvalError> {
    FolEvaluator::new(f).eval(m, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::formula::parse_fol;

    fn assign(m: &KripkeModel, pairs: &[(&str, &str)]) -> Assignment {
        pairs
            .iter()
            .map(|(v, w)| (Symbol::from(*v), m.world(w).unwrap()))
            .collect()
    }

    #[test]
    fn relation_and_equality() {
        let m = fixtures::intro_graph();
        let a = assign(&m, &[("x", "i"), ("y", "s")]);
        assert!(eval_fol(&m, &a, &parse_fol("R x y").unwrap()).unwrap());
        assert!(!eval_fol(&m, &a, &parse_fol("R y x").unwrap()).unwrap());
        assert!(eval_fol(&m, &a, &parse_fol("x = x").unwrap()).unwrap());
    }

    #[test]
    fn unbound_variables_are_reported() {
        let m = fixtures::intro_graph();
        let a = assign(&m, &[("x", "i")]);
        let err = eval_fol(&m, &a, &parse_fol("R x z").unwrap()).unwrap_err();
        assert!(matches!(err, EvalError::UnboundVariable(v) if v == "z"));
    }

    #[test]
    fn shadowed_binders() {
        let m = fixtures::intro_graph();
        let f = parse_fol("Ex y (R x y & Ex y (R y x))").unwrap();
        let e = FolEvaluator::new(&f).extension(&m, "x").unwrap();
        assert_eq!(m.format_set(e), "{s, v, u, t}");
    }

    #[test]
    fn extension_of_sentence() {
        let m = fixtures::intro_graph();
        let e = FolEvaluator::new(&parse_fol("Ex y P_p y").unwrap())
            .extension(&m, "x")
            .unwrap();
        assert_eq!(e, m.all_worlds());
    }
}
