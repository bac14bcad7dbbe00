//! The three mex recurrences.
//!
//! Each recurrence is an iterator over `(a_n, b_n)` starting at `(0, 0)`, so
//! callers can stop after a fixed count or once `a_n` leaves a board.

use std::collections::BTreeSet;

use crate::games::{ConstraintSpec, ConstraintValue};
use crate::quadfield::BeattyPair;

use super::{PTable, SolverError, Source};

/// Tracks used values and hands out the next minimum excludant.
#[derive(Default)]
struct MexTracker {
    used: BTreeSet<u64>,
    floor: u64,
}

impl MexTracker {
    fn next(&mut self) -> u64 {
        while self.used.contains(&self.floor) {
            self.used.remove(&self.floor);
            self.floor += 1;
        }
        self.floor
    }

    fn insert(&mut self, v: u64) {
        if v >= self.floor {
            self.used.insert(v);
        }
    }
}

fn collect_count<I>(iter: I, count: usize, source: Source) -> Result<PTable, SolverError>
where
    I: Iterator<Item = Result<(u64, u64), SolverError>>,
{
    if count == 0 {
        return Err(SolverError::EmptyCount);
    }
    let pairs = iter.take(count).collect::<Result<Vec<_>, _>>()?;
    Ok(PTable::new(pairs, source))
}

fn collect_bound<I>(iter: I, bound: u64, source: Source) -> Result<PTable, SolverError>
where
    I: Iterator<Item = Result<(u64, u64), SolverError>>,
{
    let mut pairs = Vec::new();
    for item in iter {
        let pair = item?;
        if pair.0 > bound {
            break;
        }
        pairs.push(pair);
    }
    Ok(PTable::new(pairs, source))
}

fn next_b(n: usize, prev: (u64, u64), a: u64, f: i64) -> Result<u64, SolverError> {
    let b = f + prev.1 as i64 + a as i64 - prev.0 as i64;
    u64::try_from(b).map_err(|_| SolverError::NegativeTerm { n })
}

/// `a_n = mex`, `b_n = f(a_{n-1}, b_{n-1}, a_n) + b_{n-1} + a_n - a_{n-1}`,
/// whether or not the pairs are P-positions of any game.
pub struct ClosedRecurrence<'a> {
    spec: &'a ConstraintSpec,
    mex: MexTracker,
    prev: Option<(u64, u64)>,
    n: usize,
    failed: bool,
}

impl<'a> ClosedRecurrence<'a> {
    pub fn new(spec: &'a ConstraintSpec) -> Self {
        Self { spec, mex: MexTracker::default(), prev: None, n: 0, failed: false }
    }

    fn step(&mut self) -> Result<(u64, u64), SolverError> {
        let Some(prev) = self.prev else {
            return Ok((0, 0));
        };
        let a = self.mex.next();
        let f = self.spec.eval(prev.0, prev.1, a)?.value().ok_or(SolverError::UndefinedConstraint {
            x1: prev.0,
            y1: prev.1,
            x0: a,
        })?;
        Ok((a, next_b(self.n, prev, a, f)?))
    }
}

impl Iterator for ClosedRecurrence<'_> {
    type Item = Result<(u64, u64), SolverError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let pair = match self.step() {
            Ok(p) => p,
            Err(e) => {
                self.failed = true;
                return Some(Err(e));
            }
        };
        self.mex.insert(pair.0);
        self.mex.insert(pair.1);
        self.prev = Some(pair);
        self.n += 1;
        Some(Ok(pair))
    }
}

/// P-positions of the Modified game: `b_n` is the least `b >= a_n` that differs
/// from every earlier `b_k` and avoids every interval
/// `|(b - b_k) - (a_n - a_k)| < f(a_k, b_k, a_n)`.
pub struct DoubleMex<'a> {
    spec: &'a ConstraintSpec,
    mex: MexTracker,
    pairs: Vec<(u64, u64)>,
    failed: bool,
}

impl<'a> DoubleMex<'a> {
    pub fn new(spec: &'a ConstraintSpec) -> Self {
        Self { spec, mex: MexTracker::default(), pairs: Vec::new(), failed: false }
    }

    fn step(&mut self) -> Result<(u64, u64), SolverError> {
        if self.pairs.is_empty() {
            return Ok((0, 0));
        }
        let a = self.mex.next();
        let origin_only = if self.spec.depends_only_on_origin() {
            Some(self.spec.eval(0, 0, a)?.or_zero())
        } else {
            None
        };
        // closed integer intervals of excluded b, clipped to b >= a
        let mut blocked: Vec<(i64, i64)> = Vec::with_capacity(2 * self.pairs.len());
        for (k, &(ak, bk)) in self.pairs.iter().enumerate() {
            if k > 0 {
                blocked.push((bk as i64, bk as i64));
            }
            let f = match origin_only {
                Some(f) => f,
                None => self.spec.eval(ak, bk, a)?.or_zero(),
            };
            if f >= 1 {
                let centre = a as i64 + bk as i64 - ak as i64;
                blocked.push(((centre - f + 1).max(a as i64), centre + f - 1));
            }
        }
        blocked.sort_unstable();
        let mut b = a as i64;
        for (lo, hi) in blocked {
            if lo > b {
                break;
            }
            b = b.max(hi + 1);
        }
        Ok((a, b as u64))
    }
}

impl Iterator for DoubleMex<'_> {
    type Item = Result<(u64, u64), SolverError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.step() {
            Ok(pair) => {
                self.mex.insert(pair.0);
                self.mex.insert(pair.1);
                self.pairs.push(pair);
                Some(Ok(pair))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// P-positions of Relaxed Wythoff: `b_n = f(a_n) + b_{n-1} + a_n - a_{n-1}`.
///
/// Fails as soon as the hypothesis `f >= 0`, `f(1) >= 1` is seen to break.
pub struct RelaxedRecurrence<'a> {
    inner: ClosedRecurrence<'a>,
    checked: bool,
}

impl<'a> RelaxedRecurrence<'a> {
    pub fn new(spec: &'a ConstraintSpec) -> Self {
        Self { inner: ClosedRecurrence::new(spec), checked: false }
    }

    fn check_next(&mut self) -> Result<(), SolverError> {
        let spec = self.inner.spec;
        if !spec.depends_only_on_origin() {
            return Err(SolverError::Hypothesis(format!(
                "constraint {} is not a function of the origin's smaller pile",
                spec.kind()
            )));
        }
        let Some(_) = self.inner.prev else { return Ok(()) };
        let a = self.inner.mex.next();
        match spec.eval(0, 0, a)? {
            ConstraintValue::Value(f) if f < 0 => {
                Err(SolverError::Hypothesis(format!("f({a}) = {f} is negative")))
            }
            ConstraintValue::Value(f) if a == 1 && f < 1 => {
                Err(SolverError::Hypothesis(format!("f(1) = {f} must be at least 1")))
            }
            ConstraintValue::Value(_) => Ok(()),
            ConstraintValue::Undefined => Err(SolverError::UndefinedConstraint { x1: 0, y1: 0, x0: a }),
        }
    }
}

impl Iterator for RelaxedRecurrence<'_> {
    type Item = Result<(u64, u64), SolverError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.checked {
            return None;
        }
        if let Err(e) = self.check_next() {
            self.checked = true;
            return Some(Err(e));
        }
        self.inner.next()
    }
}

/// First `count` pairs of the closed recurrence.
pub fn recurrence_closed(spec: &ConstraintSpec, count: usize) -> Result<PTable, SolverError> {
    collect_count(ClosedRecurrence::new(spec), count, Source::ClosedRecurrence)
}

/// First `count` P-positions of the Modified game with constraint `spec`.
pub fn solve_doublemex(spec: &ConstraintSpec, count: usize) -> Result<PTable, SolverError> {
    collect_count(DoubleMex::new(spec), count, Source::DoubleMex)
}

/// All double-mex pairs with `a_n <= bound`.
pub fn solve_doublemex_to_bound(spec: &ConstraintSpec, bound: u64) -> Result<PTable, SolverError> {
    collect_bound(DoubleMex::new(spec), bound, Source::DoubleMex)
}

/// First `count` P-positions of Relaxed Wythoff with constraint `spec`.
pub fn solve_relaxed(spec: &ConstraintSpec, count: usize) -> Result<PTable, SolverError> {
    collect_count(RelaxedRecurrence::new(spec), count, Source::RelaxedRecurrence)
}

/// All relaxed-recurrence pairs with `a_n <= bound`.
pub fn solve_relaxed_to_bound(spec: &ConstraintSpec, bound: u64) -> Result<PTable, SolverError> {
    collect_bound(RelaxedRecurrence::new(spec), bound, Source::RelaxedRecurrence)
}

/// `(floor(n alpha), floor(n beta))` for `n < count`.
pub fn beatty_table(pair: &BeattyPair, count: usize) -> PTable {
    PTable::new((0..count as u64).map(|n| (pair.a(n), pair.b(n))).collect(), Source::Beatty)
}
