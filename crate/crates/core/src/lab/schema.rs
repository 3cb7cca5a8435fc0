use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::sweep::{Hit, Probe};
use super::LabError;
use crate::checker::{Checker, Semantics};
use crate::formula::{parse_hybrid, parse_ld, HybridFormula, LdFormula, Symbol};
use crate::kripke::KripkeModel;
use crate::translate::{Assignment, HybridEvaluator};
use crate::worldset::World;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    /// The deletion language.
    #[default]
    Ld,
    /// The deletion language with nominals, `@` and `!`.
    Hybrid,
}

/// What a sweep of a schema should find.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    #[default]
    Valid,
    Refuted,
}

/// A formula template over `$name` metavariables, each ranging over a pool
/// of formula texts.
///
/// ```json
/// {"id": "del-boolean", "language": "ld", "template": "[-$a]$b <-> $b",
///  "pools": {"a": ["p", "<>p"], "b": ["p", "p & ~q"]}}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schema {
    pub id: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub language: Language,
    #[serde(default)]
    pub semantics: Semantics,
    pub template: String,
    pub pools: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub atoms: Vec<String>,
    #[serde(default = "default_max_worlds")]
    pub max_worlds: usize,
    #[serde(default)]
    pub expect: Expectation,
}

fn default_max_worlds() -> usize {
    3
}

#[derive(Clone, Debug)]
pub enum Instance {
    Ld(LdFormula),
    Hybrid(HybridFormula),
}

impl Schema {
    pub fn from_json(text: &str) -> Result<Schema, LabError> {
        let s: Schema = serde_json::from_str(text).map_err(|e| LabError::Schema(e.to_string()))?;
        s.metavariables()?;
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Schema, LabError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| LabError::Schema(format!("{}: {e}", path.display())))?;
        Schema::from_json(&text)
    }

    /// Metavariables of the template in first-occurrence order; each must
    /// have a non-empty pool.
    pub fn metavariables(&self) -> Result<Vec<String>, LabError> {
        let mut out: Vec<String> = Vec::new();
        let mut rest = self.template.as_str();
        while let Some(i) = rest.find('$') {
            rest = &rest[i + 1..];
            let end = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                .unwrap_or(rest.len());
            let name = &rest[..end];
            if name.is_empty() {
                return Err(LabError::Schema("'$' without a metavariable name".into()));
            }
            match self.pools.get(name) {
                Some(pool) if !pool.is_empty() => {}
                _ => return Err(LabError::Schema(format!("no instances for ${name}"))),
            }
            if !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
            rest = &rest[end..];
        }
        Ok(out)
    }

    /// Replace every metavariable by its binding, parenthesised.
    pub fn instantiate(&self, bindings: &BTreeMap<String, String>) -> String {
        let mut out = String::new();
        let mut rest = self.template.as_str();
        while let Some(i) = rest.find('$') {
            out.push_str(&rest[..i]);
            rest = &rest[i + 1..];
            let end = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                .unwrap_or(rest.len());
            out.push('(');
            out.push_str(&bindings[&rest[..end]]);
            out.push(')');
            rest = &rest[end..];
        }
        out.push_str(rest);
        out
    }

    /// Every instance, varying the last metavariable fastest.
    pub fn instances(&self) -> Result<Vec<(String, Instance)>, LabError> {
        let vars = self.metavariables()?;
        let mut combos: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
        for v in &vars {
            let pool = &self.pools[v];
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    pool.iter().map(move |f| {
                        let mut c = c.clone();
                        c.insert(v.clone(), f.clone());
                        c
                    })
                })
                .collect();
        }
        combos
            .iter()
            .map(|b| {
                let text = self.instantiate(b);
                let f = match self.language {
                    Language::Ld => Instance::Ld(parse_ld(&text)?),
                    Language::Hybrid => Instance::Hybrid(parse_hybrid(&text)?),
                };
                Ok((text, f))
            })
            .collect()
    }

    /// Atoms of the sweep: the declared ones, else those of the instances.
    pub fn sweep_atoms(&self, instances: &[(String, Instance)]) -> Vec<String> {
        if !self.atoms.is_empty() {
            return self.atoms.clone();
        }
        let mut out: Vec<String> = Vec::new();
        for (_, f) in instances {
            let atoms = match f {
                Instance::Ld(f) => f.atoms(),
                Instance::Hybrid(f) => hybrid_atoms(f),
            };
            for a in atoms {
                if !out.iter().any(|b| **b == *a) {
                    out.push(a.to_string());
                }
            }
        }
        out.sort();
        out
    }
}

pub(crate) struct SchemaProbe {
    pub texts: Vec<String>,
    pub instances: Vec<Instance>,
    pub semantics: Semantics,
}

pub(crate) enum SchemaWorker {
    Ld(Option<Checker>),
    Hybrid(Option<HybridEvaluator>),
}

impl Probe for SchemaProbe {
    type Worker = SchemaWorker;

    fn worker(&self) -> SchemaWorker {
        match self.instances.first() {
            Some(Instance::Hybrid(_)) => SchemaWorker::Hybrid(None),
            _ => SchemaWorker::Ld(None),
        }
    }

    fn probe(&self, worker: &mut SchemaWorker, m: &Arc<KripkeModel>, out: &mut Vec<Hit>) -> u64 {
        let all = m.all_worlds();
        let mut satisfied = 0;
        match worker {
            SchemaWorker::Ld(slot) => {
                let checker = match slot {
                    Some(c) => {
                        c.set_model(m.clone());
                        c
                    }
                    None => slot.insert(Checker::new(m.clone(), self.semantics)),
                };
                for (i, f) in self.instances.iter().enumerate() {
                    let Instance::Ld(f) = f else { unreachable!() };
                    let ext = checker.extension_at_base(f).expect("non-strict checking");
                    satisfied += ext.len() as u64;
                    out.extend(all.difference(ext).iter().map(|world| Hit {
                        world,
                        instance: i,
                        assignment: Vec::new(),
                    }));
                }
            }
            SchemaWorker::Hybrid(slot) => {
                let eval = match slot {
                    Some(e) => {
                        e.set_model(m.clone());
                        e
                    }
                    None => slot.insert(HybridEvaluator::new(m.clone())),
                };
                let state = m.initial_state();
                for (i, f) in self.instances.iter().enumerate() {
                    let Instance::Hybrid(f) = f else { unreachable!() };
                    let free: Vec<Symbol> = f.free_nominals().into_iter().collect();
                    for assignment in assignments(&free, m.len()) {
                        let a: Assignment = assignment.iter().cloned().collect();
                        let ext = eval.extension(&state, &a, f).expect("assignment covers free nominals");
                        satisfied += ext.len() as u64;
                        out.extend(all.difference(ext).iter().map(|world| Hit {
                            world,
                            instance: i,
                            assignment: assignment.clone(),
                        }));
                    }
                }
            }
        }
        satisfied
    }

    fn instance_text(&self, instance: usize) -> String {
        self.texts[instance].clone()
    }
}

/// All maps from `vars` to worlds `0..n`.
fn assignments(vars: &[Symbol], n: usize) -> Vec<Vec<(Symbol, World)>> {
    let mut out = vec![Vec::new()];
    for x in vars {
        out = out
            .into_iter()
            .flat_map(|a: Vec<(Symbol, World)>| {
                (0..n).map(move |w| {
                    let mut a = a.clone();
                    a.push((x.clone(), World(w)));
                    a
                })
            })
            .collect();
    }
    out
}

fn hybrid_atoms(f: &HybridFormula) -> Vec<Symbol> {
    fn walk(f: &HybridFormula, out: &mut Vec<Symbol>) {
        match f {
            HybridFormula::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            HybridFormula::Top | HybridFormula::Nom(_) => {}
            HybridFormula::Not(a) | HybridFormula::Box(a) | HybridFormula::At(_, a) | HybridFormula::Down(_, a) => {
                walk(a, out)
            }
            HybridFormula::And(a, b) | HybridFormula::Del(a, b) => {
                walk(a, out);
                walk(b, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(f, &mut out);
    out
}
