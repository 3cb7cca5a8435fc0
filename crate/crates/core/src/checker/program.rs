use rustc_hash::FxHashMap;

use crate::formula::{LdFormula, Symbol};

pub(crate) type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Atom(u32),
    Top,
    Not(NodeId),
    And(NodeId, NodeId),
    Box(NodeId),
    Del(NodeId, NodeId),
}

/// Hash-consed formula DAG. Structurally equal subformulas share a node,
/// so the evaluation cache is hit across every occurrence.
#[derive(Clone, Debug, Default)]
pub struct Program {
    pub(crate) nodes: Vec<Node>,
    index: FxHashMap<Node, NodeId>,
    pub(crate) atoms: Vec<Symbol>,
}

impl Program {
    pub fn new() -> Program {
        Program::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn atoms(&self) -> &[Symbol] {
        &self.atoms
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    fn atom_id(&mut self, name: &Symbol) -> u32 {
        match self.atoms.iter().position(|a| a == name) {
            Some(k) => k as u32,
            None => {
                self.atoms.push(name.clone());
                (self.atoms.len() - 1) as u32
            }
        }
    }

    /// Add a formula, returning its root node.
    pub fn compile(&mut self, f: &LdFormula) -> NodeId {
        let node = match f {
            LdFormula::Atom(a) => Node::Atom(self.atom_id(a)),
            LdFormula::Top => Node::Top,
            LdFormula::Not(a) => Node::Not(self.compile(a)),
            LdFormula::And(a, b) => {
                let a = self.compile(a);
                let b = self.compile(b);
                Node::And(a, b)
            }
            LdFormula::Box(a) => Node::Box(self.compile(a)),
            LdFormula::Del(g, b) => {
                let g = self.compile(g);
                let b = self.compile(b);
                Node::Del(g, b)
            }
        };
        self.intern(node)
    }
}
