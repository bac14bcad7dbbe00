//! Backward induction over the board `0 <= x <= y <= bound`.

use bitvec::prelude::*;
use rayon::prelude::*;

use crate::games::{is_legal_move_with, Constraint, OriginCache, Position, RuleSet};

use super::{PTable, SolverError, Source};

/// P-positions on a bounded board, stored as a bit triangle.
#[derive(Clone, Debug)]
pub struct PSet {
    bound: u64,
    bits: BitVec,
    positions: Vec<Position>,
}

fn tri_index(p: Position) -> usize {
    let y = p.y() as usize;
    y * (y + 1) / 2 + p.x() as usize
}

impl PSet {
    fn empty(bound: u64) -> Self {
        let side = bound as usize + 1;
        Self { bound, bits: bitvec![0; side * (side + 1) / 2], positions: Vec::new() }
    }

    fn insert(&mut self, p: Position) {
        self.bits.set(tri_index(p), true);
        self.positions.push(p);
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, p: Position) -> bool {
        p.y() <= self.bound && self.bits[tri_index(p)]
    }

    /// Positions in order of increasing `x + y`.
    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// The positions as `(x, y)` pairs sorted by `x`.
    pub fn to_table(&self) -> PTable {
        let mut pairs: Vec<(u64, u64)> = self.positions.iter().map(|p| (p.x(), p.y())).collect();
        pairs.sort_unstable();
        PTable::new(pairs, Source::Oracle)
    }
}

/// Every P-position with both piles at most `bound`, by direct backward
/// induction on the move relation.
///
/// Anti-diagonals `x + y = s` are processed in increasing `s`. Every move
/// strictly lowers `x + y`, so a position is P exactly when none of the
/// P-positions already found is reachable from it.
pub fn retrograde_oracle(rules: &RuleSet, bound: u64) -> Result<PSet, SolverError> {
    let cache = OriginCache::new(rules.constraint(), bound)?;
    let c: &dyn Constraint = match &cache {
        Some(cache) => cache,
        None => rules.constraint(),
    };
    let family = rules.family();
    let mut set = PSet::empty(bound);
    set.insert(Position::new(0, 0));
    for s in 1..=2 * bound {
        let lo = s.saturating_sub(bound);
        let hi = s / 2;
        if lo > hi {
            continue;
        }
        let found = (lo..=hi)
            .into_par_iter()
            .map(|x| {
                let here = Position::new(x, s - x);
                for &p in set.positions() {
                    if is_legal_move_with(family, c, here, p)? {
                        return Ok(None);
                    }
                }
                Ok(Some(here))
            })
            .collect::<Result<Vec<_>, SolverError>>()?;
        for p in found.into_iter().flatten() {
            set.insert(p);
        }
    }
    Ok(set)
}

/// Slow reference: enumerate every legal move and look the target up.
#[cfg(test)]
pub(crate) fn naive_oracle(rules: &RuleSet, bound: u64) -> Result<PSet, SolverError> {
    let c: &dyn Constraint = rules.constraint();
    let mut set = PSet::empty(bound);
    for s in 0..=2 * bound {
        for x in s.saturating_sub(bound)..=s / 2 {
            let here = Position::new(x, s - x);
            let moves = crate::games::legal_moves_with(rules.family(), c, here)?;
            if !moves.iter().any(|&m| set.contains(m)) {
                set.insert(here);
            }
        }
    }
    Ok(set)
}
