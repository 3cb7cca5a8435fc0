use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{EquivError, EquivVerdict, Outcome};
use crate::formula::Symbol;
use crate::kripke::{EdgeIndex, PointedModel};
use crate::worldset::{World, WorldSet};

/// Bounds for [`set_d_bisim`].
#[derive(Clone, Debug)]
pub struct SetGameBounds {
    /// Cap on explored configurations.
    pub max_configs: usize,
}

impl Default for SetGameBounds {
    fn default() -> Self {
        SetGameBounds { max_configs: 1 << 20 }
    }
}

type Config = (u64, u8, u64, u8);

enum Reason {
    Atoms,
    Zig(World),
    Zag(World),
    Delete(WorldSet, WorldSet),
}

struct Arena {
    idx: [EdgeIndex; 2],
    configs: Vec<Config>,
    index: FxHashMap<Config, u32>,
}

impl Arena {
    fn live(&self, side: usize, removed: u64, w: u8) -> WorldSet {
        self.idx[side].live(removed, World(w as usize))
    }

    fn id(&self, c: &Config) -> u32 {
        self.index[c]
    }
}

/// Greatest fixpoint of the set-based deletion bisimulation game.
///
/// A configuration pairs a deletion state and a world on each side. Besides
/// the atom and back-and-forth clauses, Spoiler may delete, at both current
/// worlds at once, any union of components of the bipartite graph linking
/// successors that are currently related; the resulting configuration must
/// stay related. A formula's extension among the successors is always such
/// a union, so passing this game implies agreement on every formula.
pub fn set_d_bisim(
    left: &PointedModel,
    right: &PointedModel,
    bounds: &SetGameBounds,
) -> Result<EquivVerdict, EquivError> {
    let m = [&*left.model, &*right.model];
    let mut arena = Arena {
        idx: [EdgeIndex::new(m[0])?, EdgeIndex::new(m[1])?],
        configs: Vec::new(),
        index: FxHashMap::default(),
    };
    let start: Config = (0, left.point.0 as u8, 0, right.point.0 as u8);
    explore(&mut arena, start, bounds)?;

    let mut atoms: Vec<Symbol> = m[0].atoms().iter().chain(m[1].atoms()).cloned().collect();
    atoms.sort();
    atoms.dedup();
    let agree = |w: u8, v: u8| {
        atoms
            .iter()
            .all(|a| m[0].valuation(a).contains(World(w as usize)) == m[1].valuation(a).contains(World(v as usize)))
    };

    let count = arena.configs.len();
    let mut alive = vec![true; count];
    let mut reason: Vec<Option<Reason>> = (0..count).map(|_| None).collect();
    for (i, c) in arena.configs.iter().enumerate() {
        if !agree(c.1, c.3) {
            alive[i] = false;
            reason[i] = Some(Reason::Atoms);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..count {
            if !alive[i] {
                continue;
            }
            if let Some(r) = failure(&arena, &alive, arena.configs[i]) {
                alive[i] = false;
                reason[i] = Some(r);
                changed = true;
            }
        }
    }

    let root = arena.id(&start) as usize;
    let name = |side: usize, w: u8| m[side].name(World(w as usize)).to_string();
    if alive[root] {
        let base: Vec<String> = arena
            .configs
            .iter()
            .zip(&alive)
            .filter(|(c, &a)| a && c.0 == 0 && c.2 == 0)
            .map(|(c, _)| format!("({}, {})", name(0, c.1), name(1, c.3)))
            .collect();
        let related = alive.iter().filter(|&&a| a).count();
        return Ok(EquivVerdict {
            outcome: Outcome::SetBisimilar,
            witness: None,
            detail: Some(format!(
                "{related} related configurations; undamaged pairs {}",
                base.join(", ")
            )),
            explored: count,
        });
    }
    let (w, v) = (name(0, start.1), name(1, start.3));
    let fmt_set = |side: usize, s: WorldSet| m[side].format_set(s);
    let why = match reason[root].as_ref().expect("failed configs carry a reason") {
        Reason::Atoms => format!("{w} and {v} disagree on an atom"),
        Reason::Zig(x) => format!("successor {} of {w} has no related partner", m[0].name(*x)),
        Reason::Zag(x) => format!("successor {} of {v} has no related partner", m[1].name(*x)),
        Reason::Delete(a, b) => format!(
            "deleting {} at {w} and {} at {v} leaves unrelated configurations",
            fmt_set(0, *a),
            fmt_set(1, *b)
        ),
    };
    Ok(EquivVerdict {
        outcome: Outcome::NotSetBisimilar,
        witness: None,
        detail: Some(why),
        explored: count,
    })
}

/// Every configuration reachable by moves along live edges or by deleting
/// arbitrary successor subsets on both sides.
fn explore(arena: &mut Arena, start: Config, bounds: &SetGameBounds) -> Result<(), EquivError> {
    let mut queue = VecDeque::new();
    let add = |arena: &mut Arena, c: Config, queue: &mut VecDeque<Config>| {
        if !arena.index.contains_key(&c) {
            arena.index.insert(c, arena.configs.len() as u32);
            arena.configs.push(c);
            queue.push_back(c);
        }
        if arena.configs.len() > bounds.max_configs {
            return Err(EquivError::TooLarge {
                what: "set-game configurations",
                count: arena.configs.len() as u128,
                cap: bounds.max_configs as u128,
            });
        }
        Ok(())
    };
    add(arena, start, &mut queue)?;
    while let Some((r1, w, r2, v)) = queue.pop_front() {
        let s1 = arena.live(0, r1, w);
        let s2 = arena.live(1, r2, v);
        for a in s1 {
            for b in s2 {
                add(arena, (r1, a.0 as u8, r2, b.0 as u8), &mut queue)?;
            }
        }
        for a in subsets(s1) {
            let n1 = arena.idx[0].delete_from(r1, World(w as usize), a);
            for b in subsets(s2) {
                let n2 = arena.idx[1].delete_from(r2, World(v as usize), b);
                add(arena, (n1, w, n2, v), &mut queue)?;
            }
        }
    }
    Ok(())
}

fn subsets(s: WorldSet) -> impl Iterator<Item = WorldSet> {
    let full = s.bits();
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full {
            None
        } else {
            Some((cur.wrapping_sub(full)) & full)
        };
        Some(WorldSet(cur))
    })
}

fn failure(arena: &Arena, alive: &[bool], (r1, w, r2, v): Config) -> Option<Reason> {
    let s1: Vec<World> = arena.live(0, r1, w).iter().collect();
    let s2: Vec<World> = arena.live(1, r2, v).iter().collect();
    let related = |a: World, b: World| alive[arena.id(&(r1, a.0 as u8, r2, b.0 as u8)) as usize];
    for &a in &s1 {
        if !s2.iter().any(|&b| related(a, b)) {
            return Some(Reason::Zig(a));
        }
    }
    for &b in &s2 {
        if !s1.iter().any(|&a| related(a, b)) {
            return Some(Reason::Zag(b));
        }
    }
    // union-find over s1 ++ s2
    let k = s1.len() + s2.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (i, &a) in s1.iter().enumerate() {
        for (j, &b) in s2.iter().enumerate() {
            if related(a, b) {
                let (x, y) = (find(&mut parent, i), find(&mut parent, s1.len() + j));
                parent[x] = y;
            }
        }
    }
    let mut comps: Vec<(WorldSet, WorldSet)> = Vec::new();
    let mut root_of: FxHashMap<usize, usize> = FxHashMap::default();
    for i in 0..k {
        let r = find(&mut parent, i);
        let c = *root_of.entry(r).or_insert_with(|| {
            comps.push((WorldSet::EMPTY, WorldSet::EMPTY));
            comps.len() - 1
        });
        if i < s1.len() {
            comps[c].0.insert(s1[i]);
        } else {
            comps[c].1.insert(s2[i - s1.len()]);
        }
    }
    for pick in 1u64..(1u64 << comps.len()) {
        let (mut a, mut b) = (WorldSet::EMPTY, WorldSet::EMPTY);
        for (c, &(x, y)) in comps.iter().enumerate() {
            if pick & (1 << c) != 0 {
                a = a.union(x);
                b = b.union(y);
            }
        }
        let n1 = arena.idx[0].delete_from(r1, World(w as usize), a);
        let n2 = arena.idx[1].delete_from(r2, World(v as usize), b);
        if !alive[arena.id(&(n1, w, n2, v)) as usize] {
            return Some(Reason::Delete(a, b));
        }
    }
    None
}
