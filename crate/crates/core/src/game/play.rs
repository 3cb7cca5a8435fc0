use std::fmt;
use std::io::{self, BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use super::solve::Analysis;
use super::{GameConfig, GameError, GameSpec, Player, DEFAULT_ARENA_CAP};

#[derive(Debug, Error)]
pub enum PlayError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("input ended before the play was over")]
    Aborted,
    #[error("line {line}: '{text}' is not a legal move")]
    IllegalMove { line: usize, text: String },
}

/// The moves of a finished play, one per line, in the form accepted by
/// [`replay`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub moves: Vec<String>,
    pub winner: Player,
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        write!(f, "winner {}", self.winner)
    }
}

fn show(spec: &GameSpec, c: &GameConfig, out: &mut impl Write) -> io::Result<()> {
    let links: Vec<String> = spec
        .state(c)
        .live_edges()
        .iter()
        .map(|&(a, b)| format!("{}->{}", spec.model.name(a), spec.model.name(b)))
        .collect();
    writeln!(out, "E at {}; links: {}", spec.model.name(c.position), links.join(" "))?;
    if let Some(r) = c.rounds_left {
        writeln!(out, "rounds left: {r}")?;
    }
    Ok(())
}

/// Play against the solver in a terminal loop. The human controls `human`;
/// illegal input is re-prompted.
pub fn play_interactive(
    spec: &GameSpec,
    human: Player,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> Result<Transcript, PlayError> {
    let analysis = Analysis::new(spec, DEFAULT_ARENA_CAP)?;
    let mut c = spec.initial();
    let mut moves = Vec::new();
    loop {
        if let Some(winner) = spec.outcome(&c) {
            writeln!(out, "winner {winner}")?;
            return Ok(Transcript { moves, winner });
        }
        show(spec, &c, out)?;
        let legal = spec.legal_moves(&c);
        let m = if c.turn == human {
            let options: Vec<String> = legal.iter().map(|m| spec.describe(m)).collect();
            loop {
                write!(out, "{} to move [{}]> ", c.turn, options.join(", "))?;
                out.flush()?;
                let mut line = String::new();
                if input.read_line(&mut line)? == 0 {
                    writeln!(out)?;
                    return Err(PlayError::Aborted);
                }
                match spec.parse_move(line.trim(), c.turn) {
                    Some(m) if legal.contains(&m) => break m,
                    _ => writeln!(out, "illegal move: {}", line.trim())?,
                }
            }
        } else {
            analysis
                .best_move(&c)
                .expect("configuration with legal moves is in the arena")
        };
        let line = spec.describe(&m);
        writeln!(out, "{line}")?;
        moves.push(line);
        c = spec.apply(&c, &m);
    }
}

/// Configurations visited by a transcript, starting with the initial one.
/// A trailing `winner` line is checked against the final outcome.
pub fn replay(spec: &GameSpec, text: &str) -> Result<Vec<GameConfig>, PlayError> {
    let mut c = spec.initial();
    let mut path = vec![c];
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let illegal = || PlayError::IllegalMove {
            line: n + 1,
            text: line.to_string(),
        };
        if let Some(w) = line.strip_prefix("winner ") {
            let claimed: Player = w.trim().parse().map_err(|_| illegal())?;
            if spec.outcome(&c) != Some(claimed) {
                return Err(illegal());
            }
            continue;
        }
        let m = spec.parse_move(line, c.turn).ok_or_else(illegal)?;
        if !spec.legal_moves(&c).contains(&m) {
            return Err(illegal());
        }
        c = spec.apply(&c, &m);
        path.push(c);
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Variant;

    fn intro(start: &str) -> GameSpec {
        GameSpec::named(
            fixtures::intro_graph(),
            start,
            &["t", "g"],
            Variant::Definable,
            &["p", "q"],
            None,
        )
        .unwrap()
    }

    #[test]
    fn engine_wins_as_a_whatever_e_types() {
        let spec = intro("i");
        let mut input = "move v\nE move s\nmove t\nmove u\n".as_bytes();
        let mut out = Vec::new();
        let t = play_interactive(&spec, Player::E, &mut input, &mut out).unwrap();
        assert_eq!(t.winner, Player::A);
        assert_eq!(t.moves, ["A cut p", "E move s", "A cut q"]);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("illegal move: move v"));
        assert_eq!(replay(&spec, &t.to_string()).unwrap().len(), 4);
    }

    #[test]
    fn start_on_goal_ends_at_once() {
        let spec = intro("t");
        let t = play_interactive(&spec, Player::E, &mut "".as_bytes(), &mut Vec::new()).unwrap();
        assert_eq!(t.winner, Player::E);
        assert!(t.moves.is_empty());
    }

    #[test]
    fn eof_aborts() {
        let spec = intro("i");
        let r = play_interactive(&spec, Player::A, &mut "cut z\n".as_bytes(), &mut Vec::new());
        assert!(matches!(r, Err(PlayError::Aborted)));
    }

    #[test]
    fn replay_rejects_bad_lines() {
        let spec = intro("i");
        assert!(matches!(
            replay(&spec, "A cut p\nE move v\n"),
            Err(PlayError::IllegalMove { line: 2, .. })
        ));
        assert!(matches!(
            replay(&spec, "A cut p\nwinner E\n"),
            Err(PlayError::IllegalMove { line: 2, .. })
        ));
    }
}
