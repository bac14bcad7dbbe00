//! P-position generation, the retrograde oracle, and the table utilities used
//! to compare them.

mod gaps;
mod oracle;
mod recurrence;

pub use gaps::{detect_gap, GapReport};
pub use oracle::{retrograde_oracle, PSet};
pub use recurrence::{
    beatty_table, recurrence_closed, solve_doublemex, solve_doublemex_to_bound, solve_relaxed,
    solve_relaxed_to_bound, ClosedRecurrence, DoubleMex, RelaxedRecurrence,
};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::games::{GameError, GameFamily, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("constraint is undefined at f({x1}, {y1}, {x0})")]
    UndefinedConstraint { x1: u64, y1: u64, x0: u64 },
    #[error("recurrence produced a negative pile size at step {n}")]
    NegativeTerm { n: usize },
    #[error("relaxed recurrence hypothesis violated: {0}")]
    Hypothesis(String),
}

/// Which procedure produced a [`PTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedRecurrence,
    DoubleMex,
    RelaxedRecurrence,
    Oracle,
    Beatty,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::ClosedRecurrence => "closed_recurrence",
            Source::DoubleMex => "double_mex",
            Source::RelaxedRecurrence => "relaxed_recurrence",
            Source::Oracle => "oracle",
            Source::Beatty => "beatty",
        })
    }
}

/// Ordered P-position pairs `(a_n, b_n)` starting at `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTable {
    pairs: Vec<(u64, u64)>,
    source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table must start with (0, 0)")]
    MissingOrigin,
    #[error("a_n must be strictly increasing, violated at n = {0}")]
    NotIncreasing(usize),
    #[error("a_n <= b_n violated at n = {0}")]
    Unordered(usize),
    #[error("value {value} appears in pairs {first} and {second}")]
    Repeated { value: u64, first: usize, second: usize },
}

impl PTable {
    pub fn new(pairs: Vec<(u64, u64)>, source: Source) -> Self {
        Self { pairs, source }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn a_values(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn b_values(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    /// Pairs with `b_n <= bound`, order preserved.
    pub fn restrict(&self, bound: u64) -> PTable {
        PTable { pairs: self.pairs.iter().copied().filter(|p| p.1 <= bound).collect(), source: self.source }
    }

    pub fn truncate(&self, count: usize) -> PTable {
        PTable { pairs: self.pairs.iter().copied().take(count).collect(), source: self.source }
    }

    pub fn to_set(&self) -> BTreeSet<(u64, u64)> {
        self.pairs.iter().copied().collect()
    }

    /// Checks the structural invariants. Tables from the mex constructions must
    /// also use every positive value in at most one pair (a pair `(a, a)` counts once).
    pub fn check_invariants(&self) -> Result<(), TableError> {
        if self.pairs.first() != Some(&(0, 0)) {
            return Err(TableError::MissingOrigin);
        }
        for (n, w) in self.pairs.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(TableError::NotIncreasing(n + 1));
            }
        }
        if let Some(n) = self.pairs.iter().position(|p| p.0 > p.1) {
            return Err(TableError::Unordered(n));
        }
        if matches!(self.source, Source::DoubleMex | Source::RelaxedRecurrence) {
            let mut seen: HashMap<u64, usize> = HashMap::new();
            for (n, &(a, b)) in self.pairs.iter().enumerate().skip(1) {
                let values: &[u64] = if a == b { &[a][..] } else { &[a, b][..] };
                for &v in values {
                    if let Some(&first) = seen.get(&v) {
                        return Err(TableError::Repeated { value: v, first, second: n });
                    }
                    seen.insert(v, n);
                }
            }
        }
        Ok(())
    }
}

/// First `count` P-positions of `rules` by the recurrence matching its family.
pub fn solve_rules(rules: &RuleSet, count: usize) -> Result<PTable, SolverError> {
    match rules.family() {
        GameFamily::ModifiedTwoPile => solve_doublemex(rules.constraint(), count),
        GameFamily::RelaxedWythoff => solve_relaxed(rules.constraint(), count),
    }
}

/// Recurrence pairs of `rules` with both entries at most `bound`.
pub fn solve_rules_to_bound(rules: &RuleSet, bound: u64) -> Result<PTable, SolverError> {
    let table = match rules.family() {
        GameFamily::ModifiedTwoPile => solve_doublemex_to_bound(rules.constraint(), bound)?,
        GameFamily::RelaxedWythoff => solve_relaxed_to_bound(rules.constraint(), bound)?,
    };
    Ok(table.restrict(bound))
}

/// Least non-negative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    let set: BTreeSet<u64> = values.into_iter().collect();
    (0..).find(|v| !set.contains(v)).expect("finite set")
}

/// First index where the two tables disagree on their common prefix.
pub fn compare_tables(t1: &PTable, t2: &PTable) -> Option<usize> {
    t1.pairs.iter().zip(&t2.pairs).position(|(p, q)| p != q)
}

/// `(a_n, (b_n - a_n) - (b_{n-1} - a_{n-1}))` for every `n >= 1`: the only
/// constraint values consistent with the table satisfying the closed recurrence.
pub fn reconstruct_constraint(table: &PTable) -> Vec<(u64, i64)> {
    table
        .pairs
        .windows(2)
        .map(|w| {
            let (a0, b0) = w[0];
            let (a1, b1) = w[1];
            (a1, (b1 as i64 - a1 as i64) - (b0 as i64 - a0 as i64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mex_examples() {
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 2, 4]), 3);
        assert_eq!(mex([1, 2, 3]), 0);
    }

    #[test]
    fn divergent_rows_compare() {
        let top = PTable::new(
            vec![(0, 0), (1, 3), (2, 6), (4, 5), (7, 13), (8, 16), (9, 19), (10, 15), (11, 23), (12, 26)],
            Source::DoubleMex,
        );
        let bottom = PTable::new(
            vec![(0, 0), (1, 3), (2, 6), (4, 9), (5, 12), (7, 16), (8, 19), (10, 22), (11, 25), (13, 29)],
            Source::Beatty,
        );
        assert_eq!(compare_tables(&top, &bottom), Some(3));
        assert_eq!(compare_tables(&top, &top), None);
        assert_eq!(compare_tables(&top, &top.truncate(4)), None);
    }

    #[test]
    fn reconstruction() {
        let sqrt19 = PTable::new(
            vec![(0, 0), (1, 3), (2, 7), (4, 11), (5, 15), (6, 18), (8, 22), (9, 26), (10, 30), (12, 34)],
            Source::Beatty,
        );
        let values: Vec<i64> = reconstruct_constraint(&sqrt19).into_iter().map(|(_, f)| f).collect();
        assert_eq!(values, [2, 3, 2, 3, 2, 2, 3, 3, 2]);
        assert!(reconstruct_constraint(&PTable::new(vec![(0, 0)], Source::Beatty)).is_empty());
    }

    #[test]
    fn invariant_checks() {
        let ok = PTable::new(vec![(0, 0), (1, 1), (2, 3)], Source::DoubleMex);
        assert_eq!(ok.check_invariants(), Ok(()));
        let repeated = PTable::new(vec![(0, 0), (1, 2), (2, 3)], Source::DoubleMex);
        assert!(matches!(repeated.check_invariants(), Err(TableError::Repeated { value: 2, .. })));
        let unordered = PTable::new(vec![(0, 0), (2, 1)], Source::ClosedRecurrence);
        assert_eq!(unordered.check_invariants(), Err(TableError::Unordered(1)));
        assert_eq!(PTable::new(vec![(1, 1)], Source::Oracle).check_invariants(), Err(TableError::MissingOrigin));
    }
}
