use std::sync::Arc;

use super::{KripkeModel, ModelError, ModelState};
use crate::worldset::{World, WorldSet};

/// Most edges an [`EdgeIndex`] can number.
pub const MAX_INDEXED_EDGES: usize = 64;

/// Numbers the edges of a model so a deletion state is a `u64` mask of
/// removed edges.
#[derive(Clone, Debug)]
pub struct EdgeIndex {
    n: usize,
    edges: Vec<(World, World)>,
    out: Vec<u64>,
    into: Vec<u64>,
}

impl EdgeIndex {
    pub fn new(m: &KripkeModel) -> Result<EdgeIndex, ModelError> {
        let edges = m.edges();
        if edges.len() > MAX_INDEXED_EDGES {
            return Err(ModelError::SpaceTooLarge {
                count: edges.len() as u128,
                cap: MAX_INDEXED_EDGES as u128,
            });
        }
        let mut out = vec![0u64; m.len()];
        let mut into = vec![0u64; m.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            out[a.0] |= 1 << i;
            into[b.0] |= 1 << i;
        }
        Ok(EdgeIndex {
            n: m.len(),
            edges,
            out,
            into,
        })
    }

    pub fn worlds(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(World, World)] {
        &self.edges
    }

    /// Number of distinct masks, `2^|edges|`.
    pub fn state_count(&self) -> u128 {
        1u128 << self.edges.len()
    }

    /// Targets of the live edges out of `w`.
    pub fn live(&self, removed: u64, w: World) -> WorldSet {
        let mut bits = self.out[w.0] & !removed;
        let mut out = WorldSet::EMPTY;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out.insert(self.edges[i].1);
            bits &= bits - 1;
        }
        out
    }

    /// Live successor rows of every world.
    pub fn rows(&self, removed: u64) -> Vec<WorldSet> {
        (0..self.n).map(|w| self.live(removed, World(w))).collect()
    }

    /// Mask after removing the edges from `w` into `targets`.
    pub fn delete_from(&self, removed: u64, w: World, targets: WorldSet) -> u64 {
        let mut into = 0;
        for v in targets {
            into |= self.into[v.0];
        }
        removed | (self.out[w.0] & into)
    }

    /// Mask after removing every edge into `targets`.
    pub fn delete_into(&self, removed: u64, targets: WorldSet) -> u64 {
        targets.iter().fold(removed, |acc, v| acc | self.into[v.0])
    }

    pub fn to_state(&self, base: &Arc<KripkeModel>, removed: u64) -> ModelState {
        let mut rows = vec![WorldSet::EMPTY; self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if removed & (1 << i) != 0 {
                rows[a.0].insert(b);
            }
        }
        ModelState::with_removed(base.clone(), rows)
    }

    pub fn mask_of(&self, state: &ModelState) -> u64 {
        let rows = state.removed_rows();
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| rows[a.0].contains(b))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_match_states() {
        let m = Arc::new(
            KripkeModel::new(
                &["a", "b", "c"],
                &[("a", "b"), ("a", "c"), ("b", "c"), ("c", "c")],
                &[] as &[(&str, Vec<&str>)],
            )
            .unwrap(),
        );
        let idx = EdgeIndex::new(&m).unwrap();
        let s = m.initial_state();
        let c = WorldSet::singleton(World(2));
        let local = idx.delete_from(0, World(0), c);
        assert_eq!(idx.to_state(&m, local), s.delete_from(World(0), c));
        let global = idx.delete_into(0, c);
        assert_eq!(idx.to_state(&m, global), s.delete_global(c));
        assert_eq!(idx.mask_of(&s.delete_global(c)), global);
        assert_eq!(idx.live(global, World(0)), WorldSet::singleton(World(1)));
    }
}
