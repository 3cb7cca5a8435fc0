//! Sabotage games on finite graphs: a cutter `A` and a traveller `E` who
//! wants to reach a goal region.
//!
//! Each round `A` cuts links out of `E`'s position, then `E` moves along a
//! live link. `E` wins on arrival at a goal; she loses if she is stuck, and
//! plays that go on forever count as wins for `A`.

mod formula;
mod play;
mod solve;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Symbol;
use crate::kripke::{EdgeIndex, KripkeModel, ModelError, ModelState};
use crate::worldset::{World, WorldSet};

pub use formula::{win_formula_a, win_formula_for};
pub use play::{play_interactive, replay, PlayError, Transcript};
pub use solve::{solve, Solution, Strategy, DEFAULT_ARENA_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    A,
    E,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::A => Player::E,
            Player::E => Player::A,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::E => "E",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(Player::A),
            "E" | "e" => Ok(Player::E),
            _ => Err(format!("unknown player '{s}' (expected A or E)")),
        }
    }
}

/// What `A` may cut each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// All links from `E`'s position into the worlds of one atom.
    Definable,
    /// One link out of `E`'s position.
    SingleEdge,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Definable => "definable",
            Variant::SingleEdge => "single-edge",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "definable" => Ok(Variant::Definable),
            "single-edge" => Ok(Variant::SingleEdge),
            _ => Err(format!("unknown variant '{s}' (expected definable or single-edge)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("atom '{0}' is not declared by the model")]
    UnknownAtom(String),
    #[error("arena has more than {cap} configurations")]
    ArenaTooLarge { cap: usize },
    #[error("the winning formula is only defined for the definable variant")]
    VariantMismatch,
    #[error("goal set {goals} is not the extension {extension} of atom '{atom}'")]
    GoalMismatch {
        atom: String,
        goals: String,
        extension: String,
    },
}

/// A game instance.
#[derive(Clone, Debug)]
pub struct GameSpec {
    pub model: Arc<KripkeModel>,
    pub start: World,
    pub goals: WorldSet,
    pub variant: Variant,
    /// Atoms `A` may name in the definable variant, in move order.
    pub atoms: Vec<Symbol>,
    /// Number of rounds for the bounded game; `A` then wins only by leaving
    /// `E` stuck off the goal within that many rounds.
    pub rounds: Option<u32>,
    pub(crate) edges: EdgeIndex,
}

impl GameSpec {
    pub fn new(
        model: Arc<KripkeModel>,
        start: World,
        goals: WorldSet,
        variant: Variant,
        atoms: &[Symbol],
        rounds: Option<u32>,
    ) -> Result<GameSpec, GameError> {
        for a in atoms {
            if !model.has_atom(a) {
                return Err(GameError::UnknownAtom(a.to_string()));
            }
        }
        let mut sorted = atoms.to_vec();
        sorted.sort();
        sorted.dedup();
        Ok(GameSpec {
            edges: EdgeIndex::new(&model)?,
            model,
            start,
            goals,
            variant,
            atoms: sorted,
            rounds,
        })
    }

    /// Build from world and atom names.
    pub fn named<S: AsRef<str>>(
        model: Arc<KripkeModel>,
        start: &str,
        goals: &[S],
        variant: Variant,
        atoms: &[S],
        rounds: Option<u32>,
    ) -> Result<GameSpec, GameError> {
        let start = model.world(start)?;
        let mut g = WorldSet::EMPTY;
        for name in goals {
            g.insert(model.world(name.as_ref())?);
        }
        let atoms: Vec<Symbol> = atoms.iter().map(|a| Symbol::from(a.as_ref())).collect();
        GameSpec::new(model, start, g, variant, &atoms, rounds)
    }

    pub fn initial(&self) -> GameConfig {
        GameConfig {
            removed: 0,
            position: self.start,
            turn: Player::A,
            rounds_left: self.rounds,
        }
    }

    pub fn live(&self, c: &GameConfig) -> WorldSet {
        self.edges.live(c.removed, c.position)
    }

    /// The model with the configuration's cuts applied.
    pub fn state(&self, c: &GameConfig) -> ModelState {
        self.edges.to_state(&self.model, c.removed)
    }

    /// The winner if the play is over at `c`.
    pub fn outcome(&self, c: &GameConfig) -> Option<Player> {
        match c.turn {
            Player::A if self.goals.contains(c.position) => Some(Player::E),
            Player::A if c.rounds_left == Some(0) => Some(if self.live(c).is_empty() { Player::A } else { Player::E }),
            Player::E if self.live(c).is_empty() => Some(Player::A),
            _ => None,
        }
    }

    /// Moves available at `c`, in a fixed order; empty once the play is over.
    pub fn legal_moves(&self, c: &GameConfig) -> Vec<Move> {
        if self.outcome(c).is_some() {
            return Vec::new();
        }
        let live = self.live(c);
        match c.turn {
            Player::E => live.iter().map(Move::Step).collect(),
            Player::A => {
                let moves: Vec<Move> = match self.variant {
                    Variant::SingleEdge => live.iter().map(|v| Move::CutEdge(c.position, v)).collect(),
                    Variant::Definable => {
                        let cuts_something = self
                            .atoms
                            .iter()
                            .any(|a| !live.intersection(self.model.valuation(a)).is_empty());
                        if cuts_something {
                            self.atoms.iter().cloned().map(Move::CutAtom).collect()
                        } else {
                            Vec::new()
                        }
                    }
                };
                if moves.is_empty() {
                    vec![Move::Pass]
                } else {
                    moves
                }
            }
        }
    }

    /// The configuration after `m`, which must be legal at `c`.
    pub fn apply(&self, c: &GameConfig, m: &Move) -> GameConfig {
        match m {
            Move::CutAtom(a) => GameConfig {
                removed: self.edges.delete_from(c.removed, c.position, self.model.valuation(a)),
                turn: Player::E,
                ..*c
            },
            Move::CutEdge(from, to) => GameConfig {
                removed: self.edges.delete_from(c.removed, *from, WorldSet::singleton(*to)),
                turn: Player::E,
                ..*c
            },
            Move::Pass => GameConfig { turn: Player::E, ..*c },
            Move::Step(v) => GameConfig {
                position: *v,
                turn: Player::A,
                rounds_left: c.rounds_left.map(|r| r.saturating_sub(1)),
                ..*c
            },
        }
    }

    /// Transcript line for `m`: `A cut p`, `A cut i->v`, `A pass` or
    /// `E move s`.
    pub fn describe(&self, m: &Move) -> String {
        let name = |w: &World| self.model.name(*w);
        match m {
            Move::CutAtom(a) => format!("A cut {a}"),
            Move::CutEdge(a, b) => format!("A cut {}->{}", name(a), name(b)),
            Move::Pass => "A pass".to_string(),
            Move::Step(v) => format!("E move {}", name(v)),
        }
    }

    /// Parse a move in transcript form; the leading player is optional.
    pub fn parse_move(&self, text: &str, turn: Player) -> Option<Move> {
        let mut words: Vec<&str> = text.split_whitespace().collect();
        if let Some(first) = words.first() {
            if let Ok(p) = first.parse::<Player>() {
                if p != turn {
                    return None;
                }
                words.remove(0);
            }
        }
        match (turn, words.as_slice()) {
            (Player::A, ["pass"]) => Some(Move::Pass),
            (Player::A, ["cut", what]) => match what.split_once("->") {
                Some((a, b)) => Some(Move::CutEdge(self.model.world(a).ok()?, self.model.world(b).ok()?)),
                None => Some(Move::CutAtom(Symbol::from(*what))),
            },
            (Player::E, ["move", w]) => Some(Move::Step(self.model.world(w).ok()?)),
            _ => None,
        }
    }
}

/// A position of the arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameConfig {
    /// Removed edges as a mask over the model's edge numbering.
    pub removed: u64,
    pub position: World,
    pub turn: Player,
    pub rounds_left: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    CutAtom(Symbol),
    CutEdge(World, World),
    Pass,
    Step(World),
}
