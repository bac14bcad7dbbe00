//! Which quadratic `alpha` admit a Modified game whose P-positions are the
//! complementary Beatty pairs of `alpha`, and the inverse solver built on it.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::games::{ConstraintSpec, GameError, RuleSet};
use crate::quadfield::{solve_unit_combination, BeattyPair, QuadError, QuadraticNumber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    I { t: u64 },
    II { p: u64, q: u64, beta_floor: u64 },
    III { p: u64, q: u64 },
    IV,
    Incompatible,
}

impl Family {
    pub fn is_compatible(&self) -> bool {
        !matches!(self, Family::Incompatible)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Family::I { .. } => "I",
            Family::II { .. } => "II",
            Family::III { .. } => "III",
            Family::IV => "IV",
            Family::Incompatible => "incompatible",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::I { t } => write!(f, "Family I, t={t}"),
            Family::II { p, q, beta_floor } => write!(f, "Family II, p={p}, q={q}, [beta]={beta_floor}"),
            Family::III { p, q } => write!(f, "Family III, p={p}, q={q}, [beta]=4"),
            Family::IV => write!(f, "Family IV, [beta]>=5"),
            Family::Incompatible => write!(f, "Incompatible"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub alpha: QuadraticNumber,
    pub beta: QuadraticNumber,
    pub beta_floor: u64,
    pub family: Family,
    /// Other labels whose defining test also passes, lower priority first.
    #[serde(default)]
    pub also_matches: Vec<Family>,
    pub delta2_range: BTreeSet<u64>,
}

impl ClassificationResult {
    pub fn is_compatible(&self) -> bool {
        self.family.is_compatible()
    }
}

impl fmt::Display for ClassificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)
    }
}

fn one_minus(x: &QuadraticNumber) -> Result<QuadraticNumber, QuadError> {
    QuadraticNumber::from_integer(1, x.radicand())?.checked_sub(x)
}

/// `(p, q)` with `p (1 - {beta}) + q {alpha} = 1`: exactly when `X` minus `Y` is empty.
fn lower_gap_solution(pair: &BeattyPair) -> Result<Option<(u64, u64)>, QuadError> {
    solve_unit_combination(&one_minus(&pair.frac_beta())?, &pair.frac_alpha())
}

/// `(p, q)` with `p {beta} + q (1 - {alpha}) = 1`: exactly when `Y` minus `X` is empty.
fn upper_gap_solution(pair: &BeattyPair) -> Result<Option<(u64, u64)>, QuadError> {
    solve_unit_combination(&pair.frac_beta(), &one_minus(&pair.frac_alpha())?)
}

fn range_of(pair: &BeattyPair) -> Result<BTreeSet<u64>, QuadError> {
    let b = pair.beta_floor();
    let mut range = BTreeSet::from([b - 1]);
    if upper_gap_solution(pair)?.is_none() {
        range.insert(b);
    }
    if lower_gap_solution(pair)?.is_none() {
        range.insert(b - 2);
    }
    Ok(range)
}

/// Every value taken by `delta2` for `alpha`.
pub fn delta2_range(alpha: QuadraticNumber) -> Result<BTreeSet<u64>, QuadError> {
    range_of(&BeattyPair::from_alpha(alpha)?)
}

/// `2 min - max >= 1` over the values of the constraint.
pub fn inequality_holds(range: &BTreeSet<u64>) -> bool {
    match (range.first(), range.last()) {
        (Some(&lo), Some(&hi)) => 2 * lo as i64 - hi as i64 >= 1,
        _ => false,
    }
}

pub fn classify_alpha(alpha: QuadraticNumber) -> Result<ClassificationResult, QuadError> {
    let pair = BeattyPair::from_alpha(alpha)?;
    let beta = pair.beta();
    let b = pair.beta_floor();
    let mut matches = Vec::new();
    let gap = beta.checked_sub(&alpha)?;
    if gap.is_integer() && gap.p() > 0 {
        matches.push(Family::I { t: gap.p() as u64 });
    }
    if b >= 5 {
        matches.push(Family::IV);
    }
    if b == 3 || b == 4 {
        if let Some((p, q)) = lower_gap_solution(&pair)? {
            matches.push(Family::II { p, q, beta_floor: b });
        }
    }
    if b == 4 {
        if let Some((p, q)) = upper_gap_solution(&pair)? {
            matches.push(Family::III { p, q });
        }
    }
    let family = matches.first().copied().unwrap_or(Family::Incompatible);
    let also_matches = matches.into_iter().skip(1).collect();
    Ok(ClassificationResult { alpha, beta, beta_floor: b, family, also_matches, delta2_range: range_of(&pair)? })
}

/// `(2 - t + sqrt(t^2 + 4)) / 2`, whose conjugate is `alpha + t`.
pub fn golden_alpha(t: u64) -> Result<QuadraticNumber, QuadError> {
    let t = t as i128;
    QuadraticNumber::new(2 - t, 1, 2, t * t + 4)
}

fn accept(alpha: QuadraticNumber, beta_floor: u64) -> Option<QuadraticNumber> {
    let pair = BeattyPair::from_alpha(alpha).ok()?;
    (pair.beta_floor() == beta_floor).then_some(alpha)
}

/// Positive root of `q a^2 + (Bp - 1 - 2q) a + (q - p - (Bp - 1)) = 0` with `B = beta_floor`,
/// kept only when it lies in `(1, 2)` and its conjugate has floor `B`.
pub fn family_ii_alpha(p: u64, q: u64, beta_floor: u64) -> Option<QuadraticNumber> {
    if p == 0 || q == 0 || beta_floor < 2 {
        return None;
    }
    let (p, q, b) = (p as i128, q as i128, beta_floor as i128);
    let m = b.checked_mul(p)? - 1;
    let disc = 4 * p.checked_mul(q)? + m.checked_mul(m)?;
    let alpha = QuadraticNumber::new(2 * q - m, 1, 2 * q, disc).ok()?;
    accept(alpha, beta_floor)
}

/// Positive root of `q a^2 + (3p - 3q + 1) a + (2q - 4p - 1) = 0`, kept only
/// when it lies in `(1, 2)` and its conjugate has floor 4.
pub fn family_iii_alpha(p: u64, q: u64) -> Option<QuadraticNumber> {
    if p == 0 || q == 0 {
        return None;
    }
    let (p, q) = (p as i128, q as i128);
    let m = q - 3 * p - 1;
    let disc = 4 * p.checked_mul(q)? + m.checked_mul(m)?;
    let alpha = QuadraticNumber::new(3 * q - 3 * p - 1, 1, 2 * q, disc).ok()?;
    accept(alpha, 4)
}

fn poly(alpha: &QuadraticNumber, c2: i128, c1: i128, c0: i128) -> Result<QuadraticNumber, QuadError> {
    let d = alpha.radicand();
    let sq = alpha.checked_mul(alpha)?.checked_scale(c2)?;
    sq.checked_add(&alpha.checked_scale(c1)?)?.checked_add(&QuadraticNumber::from_integer(c0, d)?)
}

/// Value of the family-II quadratic at `alpha`; zero for its members.
pub fn family_ii_residue(alpha: &QuadraticNumber, p: u64, q: u64, beta_floor: u64) -> Result<QuadraticNumber, QuadError> {
    let (p, q, b) = (p as i128, q as i128, beta_floor as i128);
    poly(alpha, q, b * p - 1 - 2 * q, q - p - (b * p - 1))
}

/// Value of the family-III quadratic at `alpha`; zero for its members.
pub fn family_iii_residue(alpha: &QuadraticNumber, p: u64, q: u64) -> Result<QuadraticNumber, QuadError> {
    let (p, q) = (p as i128, q as i128);
    poly(alpha, q, 3 * p - 3 * q + 1, 2 * q - 4 * p - 1)
}

/// The game whose P-positions are the Beatty pairs of `alpha`: the Modified
/// game when `alpha` is compatible, Relaxed Wythoff otherwise.
pub fn inverse_solve(alpha: QuadraticNumber) -> Result<(RuleSet, ConstraintSpec), GameError> {
    let spec = ConstraintSpec::beatty(alpha)?;
    let rules = if classify_alpha(alpha)?.is_compatible() {
        RuleSet::modified(spec.clone())
    } else {
        RuleSet::relaxed(spec.clone())?
    };
    Ok((rules, spec))
}

/// One enumerated member with the generator that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub generator: Family,
    pub classification: ClassificationResult,
}

impl FamilyMember {
    pub fn alpha(&self) -> QuadraticNumber {
        self.classification.alpha
    }
}

/// Family I for `t <= t_max`, then families II (`[beta]` in {3, 4}) and III over
/// `p <= p_max`, `q <= q_max`; the first generator of each value wins.
pub fn enumerate_families(p_max: u64, q_max: u64, t_max: u64) -> Result<Vec<FamilyMember>, QuadError> {
    let mut candidates: Vec<(Family, QuadraticNumber)> = Vec::new();
    for t in 1..=t_max {
        candidates.push((Family::I { t }, golden_alpha(t)?));
    }
    for beta_floor in [3, 4] {
        for p in 1..=p_max {
            for q in 1..=q_max {
                if let Some(a) = family_ii_alpha(p, q, beta_floor) {
                    candidates.push((Family::II { p, q, beta_floor }, a));
                }
            }
        }
    }
    for p in 1..=p_max {
        for q in 1..=q_max {
            if let Some(a) = family_iii_alpha(p, q) {
                candidates.push((Family::III { p, q }, a));
            }
        }
    }
    let mut seen = BTreeSet::new();
    candidates.retain(|(_, a)| seen.insert((a.p(), a.q(), a.r(), a.radicand())));
    candidates
        .into_par_iter()
        .map(|(generator, a)| Ok(FamilyMember { generator, classification: classify_alpha(a)? }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(p: i128, q: i128, r: i128, d: i128) -> QuadraticNumber {
        QuadraticNumber::new(p, q, r, d).unwrap()
    }

    #[test]
    fn fixtures() {
        assert_eq!(classify_alpha(qn(1, 1, 2, 5)).unwrap().family, Family::I { t: 1 });
        assert_eq!(classify_alpha(qn(-3, 1, 1, 19)).unwrap().family, Family::II { p: 3, q: 1, beta_floor: 3 });
        let bad = classify_alpha(qn(5, 1, 5, 5)).unwrap();
        assert_eq!(bad.family, Family::Incompatible);
        assert_eq!(bad.to_string(), "Incompatible");
        assert_eq!(classify_alpha(qn(1, 1, 2, 5)).unwrap().to_string(), "Family I, t=1");
    }

    #[test]
    fn ranges() {
        assert_eq!(delta2_range(qn(1, 1, 2, 5)).unwrap(), BTreeSet::from([1]));
        assert_eq!(delta2_range(qn(-3, 1, 1, 19)).unwrap(), BTreeSet::from([2, 3]));
        assert_eq!(delta2_range(qn(5, 1, 5, 5)).unwrap(), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn golden_values() {
        assert_eq!(golden_alpha(1).unwrap(), qn(1, 1, 2, 5));
        assert_eq!(golden_alpha(2).unwrap(), QuadraticNumber::sqrt(2).unwrap());
        assert_eq!(golden_alpha(3).unwrap(), qn(-1, 1, 2, 13));
        for t in 1..=10 {
            let a = golden_alpha(t).unwrap();
            let pair = BeattyPair::from_alpha(a).unwrap();
            assert_eq!(pair.beta().checked_sub(&a).unwrap(), QuadraticNumber::from_integer(t as i128, 2).unwrap());
        }
    }

    #[test]
    fn constructors() {
        assert_eq!(family_ii_alpha(3, 1, 3), Some(qn(-3, 1, 1, 19)));
        assert_eq!(family_ii_alpha(1, 1, 3), Some(QuadraticNumber::sqrt(2).unwrap()));
        for k in 1..8 {
            let expected = qn(k as i128, 1, 2 * k as i128, (4 * k + k * k) as i128);
            assert_eq!(family_ii_alpha(1, k, k + 1), Some(expected));
        }
        assert_eq!(family_ii_alpha(0, 1, 3), None);
        // the t = 3 golden value also solves the family-III quadratic
        assert_eq!(family_iii_alpha(1, 1), Some(golden_alpha(3).unwrap()));
        let both = classify_alpha(golden_alpha(3).unwrap()).unwrap();
        assert_eq!(both.family, Family::I { t: 3 });
        assert!(both.also_matches.contains(&Family::III { p: 1, q: 1 }));
        assert_eq!(family_iii_alpha(1, 10), None);
        assert_eq!(family_ii_residue(&qn(-3, 1, 1, 19), 3, 1, 3).unwrap(), QuadraticNumber::from_integer(0, 19).unwrap());
    }

    #[test]
    fn inverse() {
        let (rules, _) = inverse_solve(qn(5, 1, 5, 5)).unwrap();
        assert_eq!(rules.family(), crate::games::GameFamily::RelaxedWythoff);
        let (rules, _) = inverse_solve(qn(-3, 1, 1, 19)).unwrap();
        assert_eq!(rules.family(), crate::games::GameFamily::ModifiedTwoPile);
    }

    #[test]
    fn enumeration() {
        let small = enumerate_families(1, 1, 1).unwrap();
        assert!(small.iter().any(|m| m.alpha() == qn(1, 1, 2, 5)));
        let members = enumerate_families(6, 6, 6).unwrap();
        assert!(members.iter().any(|m| m.alpha() == qn(-3, 1, 1, 19)));
        assert!(members.iter().all(|m| m.classification.is_compatible()));
    }
}
