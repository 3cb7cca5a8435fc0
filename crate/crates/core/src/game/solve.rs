use std::collections::{BTreeMap, VecDeque};

use rustc_hash::FxHashMap;

use super::{GameConfig, GameError, GameSpec, Move, Player};

/// Default bound on arena size.
pub const DEFAULT_ARENA_CAP: usize = 1 << 22;

/// Positional strategy: the move to play at each configuration its owner
/// reaches while following it.
pub type Strategy = BTreeMap<GameConfig, Move>;

#[derive(Clone, Debug)]
pub struct Solution {
    pub winner: Player,
    /// Winner's choices at every configuration reachable when the winner
    /// follows it and the opponent plays anything.
    pub strategy: Strategy,
    pub arena_size: usize,
}

struct Arena {
    configs: Vec<GameConfig>,
    moves: Vec<Vec<(Move, u32)>>,
    preds: Vec<Vec<u32>>,
}

fn build(spec: &GameSpec, cap: usize) -> Result<Arena, GameError> {
    let mut index: FxHashMap<GameConfig, u32> = FxHashMap::default();
    let mut arena = Arena {
        configs: Vec::new(),
        moves: Vec::new(),
        preds: Vec::new(),
    };
    let mut queue = VecDeque::new();
    let start = spec.initial();
    index.insert(start, 0);
    arena.configs.push(start);
    queue.push_back(0u32);
    while let Some(id) = queue.pop_front() {
        let c = arena.configs[id as usize];
        let mut out = Vec::new();
        for m in spec.legal_moves(&c) {
            let next = spec.apply(&c, &m);
            let nid = match index.get(&next) {
                Some(&n) => n,
                None => {
                    let n = arena.configs.len() as u32;
                    if n as usize >= cap {
                        return Err(GameError::ArenaTooLarge { cap });
                    }
                    index.insert(next, n);
                    arena.configs.push(next);
                    queue.push_back(n);
                    n
                }
            };
            out.push((m, nid));
        }
        arena.moves.push(out);
    }
    arena.preds = vec![Vec::new(); arena.configs.len()];
    for (id, out) in arena.moves.iter().enumerate() {
        for &(_, to) in out {
            arena.preds[to as usize].push(id as u32);
        }
    }
    Ok(arena)
}

/// Attractor ranks over the whole arena.
pub(crate) struct Analysis {
    arena: Arena,
    index: FxHashMap<GameConfig, u32>,
    /// Attractor layer of each configuration; `u32::MAX` outside.
    rank: Vec<u32>,
}

impl Analysis {
    pub(crate) fn new(spec: &GameSpec, cap: usize) -> Result<Analysis, GameError> {
        let arena = build(spec, cap)?;
        let n = arena.configs.len();
        let mut rank = vec![u32::MAX; n];
        let mut pending: Vec<usize> = arena.moves.iter().map(|m| m.len()).collect();
        let mut queue = VecDeque::new();
        for (i, c) in arena.configs.iter().enumerate() {
            if spec.outcome(c) == Some(Player::E) {
                rank[i] = 0;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            for &p in &arena.preds[i] {
                let p = p as usize;
                if rank[p] != u32::MAX {
                    continue;
                }
                let enters = match arena.configs[p].turn {
                    Player::E => true,
                    Player::A => {
                        pending[p] -= 1;
                        pending[p] == 0
                    }
                };
                if enters {
                    rank[p] = rank[i] + 1;
                    queue.push_back(p);
                }
            }
        }
        let index = arena.configs.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect();
        Ok(Analysis { arena, index, rank })
    }

    /// Best move for the player to move at arena node `i`: the winner keeps
    /// the play on its side, the loser delays defeat as long as possible.
    fn choose(&self, i: usize) -> Option<&(Move, u32)> {
        let moves = &self.arena.moves[i];
        let r = |to: &u32| self.rank[*to as usize];
        match self.arena.configs[i].turn {
            Player::E => moves.iter().min_by_key(|(_, to)| r(to)),
            Player::A => moves
                .iter()
                .find(|(_, to)| r(to) == u32::MAX)
                .or_else(|| moves.iter().max_by_key(|(_, to)| r(to))),
        }
    }

    pub(crate) fn best_move(&self, c: &GameConfig) -> Option<Move> {
        let i = *self.index.get(c)?;
        self.choose(i as usize).map(|(m, _)| m.clone())
    }
}

/// Solve the game by computing `E`'s attractor to her winning end
/// positions; every other configuration is won by `A`, including those
/// from which play can go on forever.
pub fn solve(spec: &GameSpec, cap: usize) -> Result<Solution, GameError> {
    let analysis = Analysis::new(spec, cap)?;
    let arena = &analysis.arena;
    let n = arena.configs.len();
    let winner = if analysis.rank[0] != u32::MAX {
        Player::E
    } else {
        Player::A
    };
    let mut strategy = Strategy::new();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        let c = &arena.configs[i];
        let next: Vec<u32> = if c.turn == winner {
            match analysis.choose(i) {
                Some((m, to)) => {
                    strategy.insert(*c, m.clone());
                    vec![*to]
                }
                None => Vec::new(),
            }
        } else {
            arena.moves[i].iter().map(|(_, to)| *to).collect()
        };
        for to in next {
            if !seen[to as usize] {
                seen[to as usize] = true;
                queue.push_back(to as usize);
            }
        }
    }
    Ok(Solution {
        winner,
        strategy,
        arena_size: n,
    })
}
