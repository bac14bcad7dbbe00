//! Gaps left between consecutive excluded intervals when the Beatty pairs are
//! fed back through the double mex.

use serde::{Deserialize, Serialize};

use crate::quadfield::{BeattyPair, QuadError};

/// Integers `[start, start + gap_size)` lie between the intervals excluded by
/// pairs `k - 1` and `k` at step `n`. Unless each is an earlier `b_j`, the
/// double mex would pick one of them instead of `floor(n beta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: u64,
    pub k: u64,
    pub start: u64,
    pub gap_size: u64,
    pub filled: bool,
}

/// Scans `2 <= n <= horizon`, `1 <= k < n` with `f = delta2` of `pair`.
pub fn detect_gap(pair: &BeattyPair, horizon: u64) -> Result<Vec<GapReport>, QuadError> {
    let a: Vec<i64> = (0..=horizon).map(|n| pair.a(n) as i64).collect();
    let b: Vec<i64> = (0..=horizon).map(|n| pair.b(n) as i64).collect();
    let mut f = vec![0_i64];
    for n in 1..=horizon {
        f.push(pair.delta2(n)? as i64);
    }
    let mut reports = Vec::new();
    for n in 2..=horizon as usize {
        let bs: std::collections::BTreeSet<i64> = b[1..n].iter().copied().collect();
        for k in 1..n {
            let size = f[k] - 2 * f[n] + 1;
            if size <= 0 {
                continue;
            }
            let start = a[n] + (b[k - 1] - a[k - 1]) + f[n];
            let filled = (start..start + size).all(|v| bs.contains(&v));
            reports.push(GapReport { n: n as u64, k: k as u64, start: start as u64, gap_size: size as u64, filled });
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::QuadraticNumber;

    fn pair(p: i128, q: i128, r: i128, d: i128) -> BeattyPair {
        BeattyPair::from_alpha(QuadraticNumber::new(p, q, r, d).unwrap()).unwrap()
    }

    #[test]
    fn unfilled_gap_at_step_three() {
        let reports = detect_gap(&pair(5, 1, 5, 5), 10).unwrap();
        let first = reports.iter().find(|r| !r.filled).unwrap();
        assert_eq!(first.n, 3);
        assert!([5, 7].contains(&first.start));
    }

    #[test]
    fn compatible_pairs_have_no_gaps() {
        for p in [pair(-3, 1, 1, 19), pair(1, 1, 2, 5)] {
            assert!(detect_gap(&p, 60).unwrap().iter().all(|r| r.filled));
        }
    }
}
