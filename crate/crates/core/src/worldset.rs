//! Fixed-width world sets.
//!
//! Models are capped at [`MAX_WORLDS`] worlds so a set of worlds fits in a
//! single machine word. Every relation row, valuation and extension in the
//! crate is a [`WorldSet`].

use std::fmt;

/// Largest number of worlds a [`crate::KripkeModel`] may have.
pub const MAX_WORLDS: usize = 64;

/// Index of a world inside its model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub usize);

impl World {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of worlds, one bit per world index.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> WorldSet {
        debug_assert!(n <= MAX_WORLDS);
        if n == MAX_WORLDS {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(w: World) -> WorldSet {
        WorldSet(1u64 << w.0)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, w: World) -> bool {
        w.0 < MAX_WORLDS && self.0 & (1u64 << w.0) != 0
    }

    pub fn insert(&mut self, w: World) {
        self.0 |= 1u64 << w.0;
    }

    pub fn remove(&mut self, w: World) {
        self.0 &= !(1u64 << w.0);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 | other.0)
    }

    pub fn intersection(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & other.0)
    }

    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest-indexed member.
    pub fn first(self) -> Option<World> {
        (self.0 != 0).then(|| World(self.0.trailing_zeros() as usize))
    }

    pub fn iter(self) -> WorldSetIter {
        WorldSetIter(self.0)
    }
}

impl FromIterator<World> for WorldSet {
    fn from_iter<I: IntoIterator<Item = World>>(iter: I) -> Self {
        let mut s = WorldSet::EMPTY;
        for w in iter {
            s.insert(w);
        }
        s
    }
}

impl IntoIterator for WorldSet {
    type Item = World;
    type IntoIter = WorldSetIter;

    fn into_iter(self) -> WorldSetIter {
        self.iter()
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|w| w.0)).finish()
    }
}

/// Ascending iterator over the members of a [`WorldSet`].
pub struct WorldSetIter(u64);

impl Iterator for WorldSetIter {
    type Item = World;

    fn next(&mut self) -> Option<World> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(World(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for WorldSetIter {}
