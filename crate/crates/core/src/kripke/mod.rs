//! Finite Kripke models and the edge-deletion states derived from them.

mod edges;
mod enumerate;
mod io;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{is_atom_name, Symbol};
use crate::worldset::{World, WorldSet, MAX_WORLDS};

pub use edges::{EdgeIndex, MAX_INDEXED_EDGES};
pub use enumerate::{enumerate_models, ModelSpace, DEFAULT_ENUMERATION_CAP};
pub use io::{load_model, save_model, to_dot, ModelFile};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("{0} worlds exceed the limit of {MAX_WORLDS}")]
    TooManyWorlds(usize),
    #[error("duplicate world id '{0}'")]
    DuplicateWorld(String),
    #[error("empty world id")]
    EmptyWorldId,
    #[error("unknown world '{0}'")]
    UnknownWorld(String),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("invalid atom name '{0}'")]
    InvalidAtom(String),
    #[error("model space of {count} models exceeds the cap of {cap}")]
    SpaceTooLarge { count: u128, cap: u128 },
    #[error("malformed model file: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A finite relational model `⟨W, R, V⟩`.
///
/// Worlds are indexed `0..n`; `succ[i]` is the successor row of world `i`
/// and `val[k]` the extension of `atoms[k]`. The atom list is the declared
/// alphabet and is kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KripkeModel {
    names: Arc<[Symbol]>,
    succ: Vec<WorldSet>,
    atoms: Arc<[Symbol]>,
    val: Vec<WorldSet>,
}

impl KripkeModel {
    /// Build a model from world names, edges and a valuation, all by name.
    pub fn new<S: AsRef<str>>(
        worlds: &[S],
        edges: &[(S, S)],
        valuation: &[(S, Vec<S>)],
    ) -> Result<KripkeModel, ModelError> {
        let names: Vec<Symbol> = worlds.iter().map(|w| Symbol::from(w.as_ref())).collect();
        check_names(&names)?;
        let lookup = |s: &S| {
            names
                .iter()
                .position(|n| &**n == s.as_ref())
                .map(World)
                .ok_or_else(|| ModelError::UnknownWorld(s.as_ref().to_string()))
        };
        let mut succ = vec![WorldSet::EMPTY; names.len()];
        for (a, b) in edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if succ[i.0].contains(j) {
                return Err(ModelError::DuplicateEdge(
                    a.as_ref().to_string(),
                    b.as_ref().to_string(),
                ));
            }
            succ[i.0].insert(j);
        }
        let mut pairs = Vec::with_capacity(valuation.len());
        for (atom, ws) in valuation {
            let mut set = WorldSet::EMPTY;
            for w in ws {
                set.insert(lookup(w)?);
            }
            pairs.push((Symbol::from(atom.as_ref()), set));
        }
        KripkeModel::from_parts(names.into(), succ, pairs)
    }

    /// Build a model from indexed parts. Atom names are validated and sorted.
    pub fn from_parts(
        names: Arc<[Symbol]>,
        succ: Vec<WorldSet>,
        valuation: Vec<(Symbol, WorldSet)>,
    ) -> Result<KripkeModel, ModelError> {
        check_names(&names)?;
        assert_eq!(succ.len(), names.len(), "one successor row per world");
        let full = WorldSet::full(names.len());
        assert!(succ.iter().all(|r| r.is_subset(full)), "edge target out of range");
        let mut valuation = valuation;
        valuation.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in valuation.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(ModelError::InvalidAtom(format!("{} (declared twice)", pair[0].0)));
            }
        }
        for (atom, set) in &valuation {
            if !is_atom_name(atom) {
                return Err(ModelError::InvalidAtom(atom.to_string()));
            }
            assert!(set.is_subset(full), "valuation out of range");
        }
        let (atoms, val): (Vec<Symbol>, Vec<WorldSet>) = valuation.into_iter().unzip();
        Ok(KripkeModel {
            names,
            succ,
            atoms: atoms.into(),
            val,
        })
    }

    /// Same as [`KripkeModel::from_parts`] for callers that already hold
    /// validated, sorted atoms.
    pub(crate) fn from_raw(
        names: Arc<[Symbol]>,
        succ: Vec<WorldSet>,
        atoms: Arc<[Symbol]>,
        val: Vec<WorldSet>,
    ) -> KripkeModel {
        debug_assert_eq!(atoms.len(), val.len());
        KripkeModel {
            names,
            succ,
            atoms,
            val,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.len()).map(World)
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    pub fn world(&self, name: &str) -> Result<World, ModelError> {
        self.names
            .iter()
            .position(|n| &**n == name)
            .map(World)
            .ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
    }

    pub fn name(&self, w: World) -> &str {
        &self.names[w.0]
    }

    pub fn names(&self) -> &[Symbol] {
        &self.names
    }

    /// Successors in the base model.
    pub fn succ(&self, w: World) -> WorldSet {
        self.succ[w.0]
    }

    pub fn rows(&self) -> &[WorldSet] {
        &self.succ
    }

    pub fn has_edge(&self, from: World, to: World) -> bool {
        self.succ[from.0].contains(to)
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|r| r.len()).sum()
    }

    /// Edges in (source, target) index order.
    pub fn edges(&self) -> Vec<(World, World)> {
        self.worlds()
            .flat_map(|w| self.succ[w.0].iter().map(move |v| (w, v)))
            .collect()
    }

    /// The declared atom alphabet, sorted.
    pub fn atoms(&self) -> &[Symbol] {
        &self.atoms
    }

    pub fn atom_index(&self, atom: &str) -> Option<usize> {
        self.atoms.binary_search_by(|a| (**a).cmp(atom)).ok()
    }

    pub fn has_atom(&self, atom: &str) -> bool {
        self.atom_index(atom).is_some()
    }

    /// Extension of an atom; undeclared atoms denote the empty set.
    pub fn valuation(&self, atom: &str) -> WorldSet {
        self.atom_index(atom).map(|k| self.val[k]).unwrap_or(WorldSet::EMPTY)
    }

    pub(crate) fn valuation_at(&self, k: usize) -> WorldSet {
        self.val[k]
    }

    /// Atoms true at `w`, in alphabet order.
    pub fn label(&self, w: World) -> Vec<&str> {
        self.atoms
            .iter()
            .zip(&self.val)
            .filter(|(_, s)| s.contains(w))
            .map(|(a, _)| &**a)
            .collect()
    }

    /// Copy of the model with `atom` set to `set`, declaring it if needed.
    pub fn with_atom(&self, atom: &str, set: WorldSet) -> Result<KripkeModel, ModelError> {
        let mut pairs: Vec<(Symbol, WorldSet)> = self
            .atoms
            .iter()
            .cloned()
            .zip(self.val.iter().copied())
            .filter(|(a, _)| &**a != atom)
            .collect();
        pairs.push((Symbol::from(atom), set.intersection(self.all_worlds())));
        KripkeModel::from_parts(self.names.clone(), self.succ.clone(), pairs)
    }

    /// Copy of the model with every atom in `atoms` declared.
    pub fn with_alphabet<S: AsRef<str>>(&self, atoms: &[S]) -> Result<KripkeModel, ModelError> {
        let mut m = self.clone();
        for a in atoms {
            if !m.has_atom(a.as_ref()) {
                m = m.with_atom(a.as_ref(), WorldSet::EMPTY)?;
            }
        }
        Ok(m)
    }

    /// The model with nothing removed.
    pub fn initial_state(self: &Arc<Self>) -> ModelState {
        ModelState::new(self.clone())
    }

    pub fn format_set(&self, set: WorldSet) -> String {
        let names: Vec<&str> = set.iter().map(|w| self.name(w)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn check_names(names: &[Symbol]) -> Result<(), ModelError> {
    if names.is_empty() {
        return Err(ModelError::NoWorlds);
    }
    if names.len() > MAX_WORLDS {
        return Err(ModelError::TooManyWorlds(names.len()));
    }
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() {
            return Err(ModelError::EmptyWorldId);
        }
        if names[..i].contains(n) {
            return Err(ModelError::DuplicateWorld(n.to_string()));
        }
    }
    Ok(())
}

impl fmt::Debug for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(a, b)| format!("{}->{}", self.name(a), self.name(b)))
            .collect();
        let val: Vec<String> = self
            .atoms
            .iter()
            .zip(&self.val)
            .map(|(a, s)| format!("{a}={}", self.format_set(*s)))
            .collect();
        write!(
            f,
            "KripkeModel {{ worlds: [{}], edges: [{}], val: [{}] }}",
            self.names.join(", "),
            edges.join(", "),
            val.join(", ")
        )
    }
}

/// A model together with a designated world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedModel {
    pub model: Arc<KripkeModel>,
    pub point: World,
}

impl PointedModel {
    pub fn new(model: Arc<KripkeModel>, point: World) -> PointedModel {
        assert!(point.0 < model.len(), "point outside the model");
        PointedModel { model, point }
    }

    pub fn named(model: Arc<KripkeModel>, point: &str) -> Result<PointedModel, ModelError> {
        let w = model.world(point)?;
        Ok(PointedModel { model, point: w })
    }
}

/// A base model minus a set of removed edges.
///
/// `removed[i]` holds the removed targets of world `i`; it is always a
/// subset of the base row, so equal states have equal representations.
#[derive(Clone)]
pub struct ModelState {
    base: Arc<KripkeModel>,
    removed: Vec<WorldSet>,
}

impl ModelState {
    pub fn new(base: Arc<KripkeModel>) -> ModelState {
        let removed = vec![WorldSet::EMPTY; base.len()];
        ModelState { base, removed }
    }

    /// State with the given removed rows, clipped to the base edges.
    pub fn with_removed(base: Arc<KripkeModel>, removed: Vec<WorldSet>) -> ModelState {
        assert_eq!(removed.len(), base.len());
        let removed = removed
            .iter()
            .zip(base.rows())
            .map(|(r, b)| r.intersection(*b))
            .collect();
        ModelState { base, removed }
    }

    pub fn base(&self) -> &Arc<KripkeModel> {
        &self.base
    }

    pub fn removed_rows(&self) -> &[WorldSet] {
        &self.removed
    }

    /// Removed edges in (source, target) order.
    pub fn removed(&self) -> Vec<(World, World)> {
        self.base
            .worlds()
            .flat_map(|w| self.removed[w.0].iter().map(move |v| (w, v)))
            .collect()
    }

    /// Live edges in (source, target) order.
    pub fn live_edges(&self) -> Vec<(World, World)> {
        self.base
            .worlds()
            .flat_map(|w| self.successors(w).iter().map(move |v| (w, v)))
            .collect()
    }

    pub fn successors(&self, w: World) -> WorldSet {
        self.base.succ(w).difference(self.removed[w.0])
    }

    /// Successors of a world given by name.
    pub fn successors_of(&self, name: &str) -> Result<WorldSet, ModelError> {
        Ok(self.successors(self.base.world(name)?))
    }

    /// Remove the live edges from `w` into `targets`.
    pub fn delete_from(&self, w: World, targets: WorldSet) -> ModelState {
        let cut = self.successors(w).intersection(targets);
        if cut.is_empty() {
            return self.clone();
        }
        let mut removed = self.removed.clone();
        removed[w.0] = removed[w.0].union(cut);
        ModelState {
            base: self.base.clone(),
            removed,
        }
    }

    /// Remove every live edge whose target lies in `targets`.
    pub fn delete_global(&self, targets: WorldSet) -> ModelState {
        let removed = self
            .removed
            .iter()
            .zip(self.base.rows())
            .map(|(r, b)| r.union(b.intersection(targets)))
            .collect();
        ModelState {
            base: self.base.clone(),
            removed,
        }
    }

    /// The current model as a standalone [`KripkeModel`].
    pub fn materialize(&self) -> KripkeModel {
        let succ = self.base.worlds().map(|w| self.successors(w)).collect();
        KripkeModel::from_raw(
            self.base.names.clone(),
            succ,
            self.base.atoms.clone(),
            self.base.val.clone(),
        )
    }
}

impl PartialEq for ModelState {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base) && self.removed == other.removed
    }
}

impl Eq for ModelState {}

impl std::hash::Hash for ModelState {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.removed.hash(state);
    }
}

impl fmt::Debug for ModelState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let removed: Vec<String> = self
            .removed()
            .into_iter()
            .map(|(a, b)| format!("{}->{}", self.base.name(a), self.base.name(b)))
            .collect();
        write!(f, "ModelState {{ removed: [{}] }}", removed.join(", "))
    }
}
