//! Interactive play against an engine that always moves to a P-position when one is reachable.

use std::io::{BufRead, Write};
use std::sync::LazyLock;

use anyhow::Result;
use beatty_games::games::{Position, RuleSet, Verdict};
use beatty_games::solver::{retrograde_oracle, PSet};
use regex::Regex;

static MOVE_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"(?i)^\s*take\s+(\d+)\s+from\s+pile\s+([ab])\s*(?:(?:,|and)\s*(?:take\s+)?(\d+)\s+from\s+pile\s+([ab]))?\s*$",
    )
    .unwrap()
});

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    Human,
    Engine,
}

/// One move on physical piles `(A, B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Turn {
    pub player: Player,
    pub before: (u64, u64),
    pub take_a: u64,
    pub take_b: u64,
}

impl Turn {
    pub fn after(&self) -> (u64, u64) {
        (self.before.0 - self.take_a, self.before.1 - self.take_b)
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum Input {
    Move { take_a: u64, take_b: u64 },
    Quit,
}

/// Parses `take k from pile A[, l from pile B]` or `quit`.
pub fn parse_move(line: &str) -> Option<Input> {
    let t = line.trim();
    if t.eq_ignore_ascii_case("quit") || t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("exit") {
        return Some(Input::Quit);
    }
    let caps = MOVE_RE.captures(t)?;
    let mut take = [0u64; 2];
    let mut seen = [false; 2];
    for (count, pile) in [(caps.get(1), caps.get(2)), (caps.get(3), caps.get(4))] {
        let (Some(count), Some(pile)) = (count, pile) else { continue };
        let i = usize::from(pile.as_str().eq_ignore_ascii_case("b"));
        if seen[i] {
            return None;
        }
        seen[i] = true;
        take[i] = count.as_str().parse().ok()?;
    }
    Some(Input::Move { take_a: take[0], take_b: take[1] })
}

/// Game state plus the oracle the engine plays from.
pub struct Session<'a> {
    rules: &'a RuleSet,
    oracle: &'a PSet,
    piles: (u64, u64),
    transcript: Vec<Turn>,
}

impl<'a> Session<'a> {
    /// `oracle` must cover both starting piles.
    pub fn new(rules: &'a RuleSet, oracle: &'a PSet, piles: (u64, u64)) -> Self {
        assert!(piles.0.max(piles.1) <= oracle.bound(), "oracle board too small for the start position");
        Self { rules, oracle, piles, transcript: Vec::new() }
    }

    pub fn piles(&self) -> (u64, u64) {
        self.piles
    }

    pub fn is_over(&self) -> bool {
        self.piles == (0, 0)
    }

    pub fn transcript(&self) -> &[Turn] {
        &self.transcript
    }

    /// The player who made the last move, once the piles are empty.
    pub fn winner(&self) -> Option<Player> {
        if self.is_over() {
            self.transcript.last().map(|t| t.player)
        } else {
            None
        }
    }

    fn position(&self) -> Position {
        Position::new(self.piles.0, self.piles.1)
    }

    /// Applies a human move or explains why it is illegal.
    pub fn human_move(&mut self, take_a: u64, take_b: u64) -> Result<(), String> {
        match self.rules.judge(self.piles, take_a, take_b).map_err(|e| e.to_string())? {
            Verdict::Legal => {
                self.push(Player::Human, take_a, take_b);
                Ok(())
            }
            Verdict::Illegal(why) => Err(why),
        }
    }

    /// A move to a P-position if one exists, otherwise one token from the larger pile.
    pub fn engine_choice(&self) -> Result<Option<(u64, u64)>> {
        let (a, b) = self.piles;
        if self.is_over() {
            return Ok(None);
        }
        if !self.oracle.contains(self.position()) {
            for &p in self.oracle.positions() {
                for (ta, tb) in [(p.x(), p.y()), (p.y(), p.x())] {
                    if ta > a || tb > b {
                        continue;
                    }
                    let (take_a, take_b) = (a - ta, b - tb);
                    if self.rules.judge(self.piles, take_a, take_b)?.is_legal() {
                        return Ok(Some((take_a, take_b)));
                    }
                }
            }
        }
        Ok(Some(if a >= b { (1, 0) } else { (0, 1) }))
    }

    pub fn engine_move(&mut self) -> Result<Option<Turn>> {
        let Some((take_a, take_b)) = self.engine_choice()? else { return Ok(None) };
        self.push(Player::Engine, take_a, take_b);
        Ok(self.transcript.last().copied())
    }

    fn push(&mut self, player: Player, take_a: u64, take_b: u64) {
        let turn = Turn { player, before: self.piles, take_a, take_b };
        self.piles = turn.after();
        self.transcript.push(turn);
    }
}

fn describe(take_a: u64, take_b: u64) -> String {
    match (take_a, take_b) {
        (k, 0) => format!("take {k} from pile A"),
        (0, l) => format!("take {l} from pile B"),
        (k, l) => format!("take {k} from pile A, {l} from pile B"),
    }
}

/// Runs a full terminal session on `input`/`output`.
pub fn play_session<R: BufRead, W: Write>(
    rules: &RuleSet,
    start: (u64, u64),
    engine_first: bool,
    input: R,
    output: &mut W,
) -> Result<Option<Player>> {
    let oracle = retrograde_oracle(rules, start.0.max(start.1))?;
    let mut session = Session::new(rules, &oracle, start);
    writeln!(output, "rules: {} game, constraint {}", rules.family(), rules.constraint().kind())?;
    writeln!(output, "moves: 'take k from pile A', 'take l from pile B', 'take k from pile A, l from pile B', or 'quit'")?;
    let mut lines = input.lines();
    let mut engine_turn = engine_first;
    while !session.is_over() {
        let (a, b) = session.piles();
        writeln!(output, "piles: A = {a}, B = {b}")?;
        if engine_turn {
            let turn = session.engine_move()?.expect("game not over");
            writeln!(output, "engine: {}", describe(turn.take_a, turn.take_b))?;
        } else {
            write!(output, "> ")?;
            output.flush()?;
            let Some(line) = lines.next() else {
                writeln!(output, "\ninput closed")?;
                return Ok(None);
            };
            match parse_move(&line?) {
                Some(Input::Quit) => {
                    writeln!(output, "quit")?;
                    return Ok(None);
                }
                Some(Input::Move { take_a, take_b }) => {
                    if let Err(why) = session.human_move(take_a, take_b) {
                        writeln!(output, "illegal move: {why}")?;
                        continue;
                    }
                }
                None => {
                    writeln!(output, "could not read that move; try 'take 2 from pile A, 1 from pile B'")?;
                    continue;
                }
            }
        }
        engine_turn = !engine_turn;
    }
    let winner = session.winner();
    writeln!(
        output,
        "piles empty: {}",
        if winner == Some(Player::Human) { "you win" } else { "engine wins" }
    )?;
    Ok(winner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use beatty_games::games::ConstraintSpec;

    #[test]
    fn parses_moves() {
        assert_eq!(parse_move("take 3 from pile A"), Some(Input::Move { take_a: 3, take_b: 0 }));
        assert_eq!(parse_move("take 2 from pile A, 5 from pile B"), Some(Input::Move { take_a: 2, take_b: 5 }));
        assert_eq!(parse_move("Take 4 from pile b"), Some(Input::Move { take_a: 0, take_b: 4 }));
        assert_eq!(parse_move("take 1 from pile B, take 2 from pile A"), Some(Input::Move { take_a: 2, take_b: 1 }));
        assert_eq!(parse_move("quit"), Some(Input::Quit));
        assert_eq!(parse_move("take 1 from pile A, 2 from pile A"), None);
        assert_eq!(parse_move("remove everything"), None);
    }

    #[test]
    fn engine_stalls_from_p_position() {
        let rules = RuleSet::modified(ConstraintSpec::constant(1).unwrap());
        let oracle = retrograde_oracle(&rules, 10).unwrap();
        let session = Session::new(&rules, &oracle, (1, 2));
        assert_eq!(session.engine_choice().unwrap(), Some((0, 1)));
        let session = Session::new(&rules, &oracle, (4, 4));
        assert_eq!(session.engine_choice().unwrap(), Some((4, 4)));
    }

    #[test]
    fn parity_example_is_accepted() {
        let rules = RuleSet::modified(ConstraintSpec::ParityHalf);
        let oracle = retrograde_oracle(&rules, 29).unwrap();
        let mut session = Session::new(&rules, &oracle, (10, 29));
        assert_eq!(session.human_move(2, 8), Ok(()));
        assert_eq!(session.piles(), (8, 21));
        assert!(session.human_move(0, 0).is_err());
    }
}
