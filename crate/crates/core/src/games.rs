//! Positions, constraint functions and move legality for the Modified and
//! Relaxed two-pile families.
//!
//! A diagonal move is judged on the labelled piles of the origin: `x0` is the
//! smaller origin pile and `(x1, y1)` are the same physical piles after the
//! move. The destination is put back into `x <= y` order only afterwards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadfield::{BeattyPair, QuadError, QuadraticNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("constant constraint must be at least 1, got {0}")]
    NonPositiveConstant(i64),
    #[error("constraint table entries must be non-negative, got {value} at {key:?}")]
    NegativeTableEntry { key: (u64, u64, u64), value: i64 },
    #[error("constraint table has no entry for f({x1}, {y1}, {x0})")]
    MissingTableEntry { x1: u64, y1: u64, x0: u64 },
    #[error("relaxed rules need a constraint of the origin's smaller pile only, got {0}")]
    RelaxedNeedsOriginConstraint(&'static str),
}

/// A game position in canonical order `x <= y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    x: u64,
    y: u64,
}

impl Position {
    /// Canonicalises two pile sizes.
    pub fn new(a: u64, b: u64) -> Self {
        Self { x: a.min(b), y: a.max(b) }
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn total(&self) -> u64 {
        self.x + self.y
    }

    pub fn is_terminal(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Finite table of constraint values keyed by `(x1, y1, x0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintTable {
    entries: BTreeMap<(u64, u64, u64), i64>,
    strict: bool,
}

impl ConstraintTable {
    pub fn new(entries: BTreeMap<(u64, u64, u64), i64>, strict: bool) -> Result<Self, GameError> {
        if let Some((&key, &value)) = entries.iter().find(|(_, &v)| v < 0) {
            return Err(GameError::NegativeTableEntry { key, value });
        }
        Ok(Self { entries, strict })
    }

    pub fn entries(&self) -> &BTreeMap<(u64, u64, u64), i64> {
        &self.entries
    }

    /// In strict mode a missing entry is an error instead of "diagonal disallowed".
    pub fn is_strict(&self) -> bool {
        self.strict
    }
}

/// A constraint function `f(x1, y1, x0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintSpec {
    /// `f = t`, the t-Wythoff games.
    Constant(i64),
    /// Second difference of the Beatty pair, a function of `x0` alone.
    BeattyDelta(BeattyPair),
    /// `(floor(n beta) - y1) - (floor(n alpha) - x1)` where `x0 = floor(n alpha)`.
    TargetBeatty(BeattyPair),
    /// `(1 + (-1)^(y1 + 1)) x1 / 2`.
    ParityHalf,
    ExplicitTable(ConstraintTable),
}

/// Outcome of evaluating a constraint; `Undefined` disallows the diagonal move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintValue {
    Value(i64),
    Undefined,
}

impl ConstraintValue {
    pub fn value(self) -> Option<i64> {
        match self {
            ConstraintValue::Value(v) => Some(v),
            ConstraintValue::Undefined => None,
        }
    }

    /// Undefined values read as 0, which blocks every diagonal move.
    pub fn or_zero(self) -> i64 {
        self.value().unwrap_or(0)
    }
}

/// Anything that can answer `f(x1, y1, x0)`.
pub trait Constraint: Sync {
    fn value(&self, x1: u64, y1: u64, x0: u64) -> Result<ConstraintValue, GameError>;
}

impl ConstraintSpec {
    pub fn constant(t: i64) -> Result<Self, GameError> {
        if t < 1 {
            return Err(GameError::NonPositiveConstant(t));
        }
        Ok(Self::Constant(t))
    }

    pub fn beatty(alpha: QuadraticNumber) -> Result<Self, GameError> {
        Ok(Self::BeattyDelta(BeattyPair::from_alpha(alpha)?))
    }

    pub fn target_beatty(alpha: QuadraticNumber) -> Result<Self, GameError> {
        Ok(Self::TargetBeatty(BeattyPair::from_alpha(alpha)?))
    }

    /// `true` when the value depends on the origin's smaller pile only.
    pub fn depends_only_on_origin(&self) -> bool {
        matches!(self, Self::Constant(_) | Self::BeattyDelta(_))
    }

    /// The Beatty pair behind the constraint, if there is one.
    pub fn beatty_pair(&self) -> Option<&BeattyPair> {
        match self {
            Self::BeattyDelta(pair) | Self::TargetBeatty(pair) => Some(pair),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Constant(_) => "constant",
            Self::BeattyDelta(_) => "beatty",
            Self::TargetBeatty(_) => "target_beatty",
            Self::ParityHalf => "parity_half",
            Self::ExplicitTable(_) => "table",
        }
    }

    /// Evaluates `f(x1, y1, x0)`.
    pub fn eval(&self, x1: u64, y1: u64, x0: u64) -> Result<ConstraintValue, GameError> {
        use ConstraintValue::*;
        Ok(match self {
            Self::Constant(t) => Value(*t),
            Self::BeattyDelta(pair) => beatty_delta_at(pair, x0),
            Self::TargetBeatty(pair) => match pair.lower().index_of(x0) {
                Some(n) => Value((pair.b(n) as i64 - y1 as i64) - (x0 as i64 - x1 as i64)),
                None => Undefined,
            },
            Self::ParityHalf => Value(if y1 % 2 == 1 { x1 as i64 } else { 0 }),
            Self::ExplicitTable(table) => match table.entries.get(&(x1, y1, x0)) {
                Some(&v) => Value(v),
                None if table.strict => return Err(GameError::MissingTableEntry { x1, y1, x0 }),
                None => Undefined,
            },
        })
    }
}

impl Constraint for ConstraintSpec {
    fn value(&self, x1: u64, y1: u64, x0: u64) -> Result<ConstraintValue, GameError> {
        self.eval(x1, y1, x0)
    }
}

/// `f(x0)` of the Beatty constraint: `delta2(n)` where `x0` is the n-th term of
/// either sequence. Complementarity makes `n` unique for `x0 >= 1`.
fn beatty_delta_at(pair: &BeattyPair, x0: u64) -> ConstraintValue {
    if x0 == 0 {
        return ConstraintValue::Undefined;
    }
    let n = pair
        .lower()
        .index_of(x0)
        .or_else(|| pair.upper().index_of(x0))
        .expect("complementary sequences cover every positive integer");
    ConstraintValue::Value(pair.delta2(n).expect("index is positive") as i64)
}

/// Free-function form of [`ConstraintSpec::eval`].
pub fn eval_constraint(spec: &ConstraintSpec, x1: u64, y1: u64, x0: u64) -> Result<ConstraintValue, GameError> {
    spec.eval(x1, y1, x0)
}

/// Origin-only constraint values precomputed for `x0 <= bound`.
pub struct OriginCache<'a> {
    spec: &'a ConstraintSpec,
    values: Vec<ConstraintValue>,
}

impl<'a> OriginCache<'a> {
    /// Returns `None` for constraints that also depend on the destination.
    pub fn new(spec: &'a ConstraintSpec, bound: u64) -> Result<Option<Self>, GameError> {
        if !spec.depends_only_on_origin() {
            return Ok(None);
        }
        let values = (0..=bound).map(|x0| spec.eval(0, 0, x0)).collect::<Result<_, _>>()?;
        Ok(Some(Self { spec, values }))
    }
}

impl Constraint for OriginCache<'_> {
    fn value(&self, x1: u64, y1: u64, x0: u64) -> Result<ConstraintValue, GameError> {
        match self.values.get(x0 as usize) {
            Some(v) => Ok(*v),
            None => self.spec.eval(x1, y1, x0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameFamily {
    /// Nim moves plus diagonal moves with `|(y0-y1) - (x0-x1)| < f(x1, y1, x0)`.
    #[serde(rename = "modified")]
    ModifiedTwoPile,
    /// Nim moves plus diagonal moves with `(y0-y1) - (x0-x1) < f(x0)`.
    #[serde(rename = "relaxed")]
    RelaxedWythoff,
}

impl fmt::Display for GameFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameFamily::ModifiedTwoPile => "modified",
            GameFamily::RelaxedWythoff => "relaxed",
        })
    }
}

/// A game family together with its constraint function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    family: GameFamily,
    constraint: ConstraintSpec,
}

/// Why a physical move is or is not allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Legal,
    Illegal(String),
}

impl Verdict {
    pub fn is_legal(&self) -> bool {
        matches!(self, Verdict::Legal)
    }
}

impl RuleSet {
    /// Relaxed rules accept `Constant(t)` and `BeattyDelta` only: both depend on
    /// `x0` alone, are non-negative and are at least 1 at `x0 = 1`.
    pub fn new(family: GameFamily, constraint: ConstraintSpec) -> Result<Self, GameError> {
        if family == GameFamily::RelaxedWythoff && !constraint.depends_only_on_origin() {
            return Err(GameError::RelaxedNeedsOriginConstraint(constraint.kind()));
        }
        Ok(Self { family, constraint })
    }

    pub fn modified(constraint: ConstraintSpec) -> Self {
        Self { family: GameFamily::ModifiedTwoPile, constraint }
    }

    pub fn relaxed(constraint: ConstraintSpec) -> Result<Self, GameError> {
        Self::new(GameFamily::RelaxedWythoff, constraint)
    }

    pub fn family(&self) -> GameFamily {
        self.family
    }

    pub fn constraint(&self) -> &ConstraintSpec {
        &self.constraint
    }

    /// Every canonical position reachable from `from` in one move.
    pub fn legal_moves(&self, from: Position) -> Result<BTreeSet<Position>, GameError> {
        legal_moves_with(self.family, &self.constraint, from)
    }

    pub fn is_legal_move(&self, from: Position, to: Position) -> Result<bool, GameError> {
        is_legal_move_with(self.family, &self.constraint, from, to)
    }

    /// Judges removing `take_a` and `take_b` tokens from physical piles `(a, b)`,
    /// explaining the violated condition when the move is illegal.
    pub fn judge(&self, piles: (u64, u64), take_a: u64, take_b: u64) -> Result<Verdict, GameError> {
        let (a, b) = piles;
        if take_a == 0 && take_b == 0 {
            return Ok(Verdict::Illegal("a move must remove at least one token".into()));
        }
        if take_a > a || take_b > b {
            return Ok(Verdict::Illegal(format!(
                "cannot remove ({take_a}, {take_b}) from piles ({a}, {b})"
            )));
        }
        if take_a == 0 || take_b == 0 {
            return Ok(Verdict::Legal);
        }
        // label the origin so that x0 <= y0
        let (x0, y0, dx, dy) = if a <= b { (a, b, take_a, take_b) } else { (b, a, take_b, take_a) };
        let check = diagonal_check(self.family, &self.constraint, x0, y0, x0 - dx, y0 - dy)?;
        if check.allowed || (x0 == y0 && diagonal_check(self.family, &self.constraint, x0, y0, x0 - dy, y0 - dx)?.allowed) {
            Ok(Verdict::Legal)
        } else {
            Ok(Verdict::Illegal(check.explain(self.family)))
        }
    }
}

struct DiagonalCheck {
    allowed: bool,
    diff: i64,
    f: ConstraintValue,
    args: (u64, u64, u64),
}

impl DiagonalCheck {
    fn explain(&self, family: GameFamily) -> String {
        let (x1, y1, x0) = self.args;
        let f = match self.f {
            ConstraintValue::Value(v) => v.to_string(),
            ConstraintValue::Undefined => "undefined".to_string(),
        };
        match family {
            GameFamily::ModifiedTwoPile => format!(
                "diagonal move needs |(y0-y1)-(x0-x1)| < f(x1,y1,x0): |{}| = {} is not < f({x1},{y1},{x0}) = {f}",
                self.diff,
                self.diff.abs()
            ),
            GameFamily::RelaxedWythoff => format!(
                "diagonal move needs (y0-y1)-(x0-x1) < f(x0): {} is not < f({x0}) = {f}",
                self.diff
            ),
        }
    }
}

/// Diagonal move from labelled origin `(x0, y0)`, `x0 <= y0`, to physical `(x1, y1)`
/// with `x1 < x0` and `y1 < y0`.
fn diagonal_check<C: Constraint + ?Sized>(
    family: GameFamily,
    c: &C,
    x0: u64,
    y0: u64,
    x1: u64,
    y1: u64,
) -> Result<DiagonalCheck, GameError> {
    let diff = (y0 - y1) as i64 - (x0 - x1) as i64;
    let f = c.value(x1, y1, x0)?;
    let allowed = match (f, family) {
        (ConstraintValue::Undefined, _) => false,
        (ConstraintValue::Value(f), GameFamily::ModifiedTwoPile) => diff.abs() < f,
        (ConstraintValue::Value(f), GameFamily::RelaxedWythoff) => diff < f,
    };
    Ok(DiagonalCheck { allowed, diff, f, args: (x1, y1, x0) })
}

pub(crate) fn legal_moves_with<C: Constraint + ?Sized>(
    family: GameFamily,
    c: &C,
    from: Position,
) -> Result<BTreeSet<Position>, GameError> {
    let (x0, y0) = (from.x, from.y);
    let mut moves = BTreeSet::new();
    for x1 in 0..x0 {
        moves.insert(Position::new(x1, y0));
    }
    for y1 in 0..y0 {
        moves.insert(Position::new(x0, y1));
    }
    for x1 in 0..x0 {
        for y1 in 0..y0 {
            if diagonal_check(family, c, x0, y0, x1, y1)?.allowed {
                moves.insert(Position::new(x1, y1));
            }
        }
    }
    Ok(moves)
}

pub(crate) fn is_legal_move_with<C: Constraint + ?Sized>(
    family: GameFamily,
    c: &C,
    from: Position,
    to: Position,
) -> Result<bool, GameError> {
    if from == to {
        return Ok(false);
    }
    let (x0, y0) = (from.x, from.y);
    let orientations = [(to.x, to.y), (to.y, to.x)];
    let count = if to.x == to.y { 1 } else { 2 };
    for &(x1, y1) in &orientations[..count] {
        if x1 > x0 || y1 > y0 {
            continue;
        }
        if x1 == x0 || y1 == y0 {
            return Ok(true);
        }
        if diagonal_check(family, c, x0, y0, x1, y1)?.allowed {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Free-function form of [`RuleSet::legal_moves`].
pub fn legal_moves(rules: &RuleSet, from: Position) -> Result<BTreeSet<Position>, GameError> {
    rules.legal_moves(from)
}

/// Free-function form of [`RuleSet::is_legal_move`].
pub fn is_legal_move(rules: &RuleSet, from: Position, to: Position) -> Result<bool, GameError> {
    rules.is_legal_move(from, to)
}
