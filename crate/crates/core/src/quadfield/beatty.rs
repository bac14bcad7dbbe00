use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{QuadError, QuadraticNumber};

/// The Beatty sequence `{floor(m * slope)}_{m >= 0}` for an irrational slope `> 1`.
///
/// Membership and index recovery cost O(1) exact operations: the only
/// candidate index for a value `n` is `ceil(n / slope)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeattySequence {
    slope: QuadraticNumber,
    inverse: QuadraticNumber,
}

impl BeattySequence {
    pub fn new(slope: QuadraticNumber) -> Result<Self, QuadError> {
        if slope.is_rational() {
            return Err(QuadError::Rational(slope));
        }
        if !slope.gt_int(1) {
            return Err(QuadError::OutOfRange { value: slope, range: "(1, inf)" });
        }
        Ok(Self { slope, inverse: slope.checked_inv()? })
    }

    pub fn slope(&self) -> QuadraticNumber {
        self.slope
    }

    pub fn term(&self, m: u64) -> u64 {
        self.slope.beatty_floor(m)
    }

    /// The index `m` with `floor(m * slope) = n`, if `n` belongs to the sequence.
    pub fn index_of(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return Some(0);
        }
        let m = u64::try_from(self.inverse.ceil_scaled(n as i128)).ok()?;
        (self.term(m) == n).then_some(m)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.index_of(n).is_some()
    }
}

/// `true` iff `n = floor(m * gamma)` for some `m >= 0`.
pub fn beatty_membership(gamma: &QuadraticNumber, n: u64) -> Result<bool, QuadError> {
    Ok(BeattySequence::new(*gamma)?.contains(n))
}

/// Value class of the second difference at a shifted index.
///
/// `Zero` when the index lies in both or neither of `X = {floor(m/{alpha})}`
/// and `Y = {floor(m/{beta})}`, `Plus` when it lies only in `Y`, `Minus` when
/// it lies only in `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trichotomy {
    Zero,
    Plus,
    Minus,
}

impl Trichotomy {
    pub fn offset(self) -> i64 {
        match self {
            Trichotomy::Zero => 0,
            Trichotomy::Plus => 1,
            Trichotomy::Minus => -1,
        }
    }
}

/// A complementary pair `1/alpha + 1/beta = 1` with `1 < alpha < 2 < beta`.
///
/// Only constructible through [`BeattyPair::from_alpha`] or the checked
/// [`BeattyPair::new`], so every value satisfies the Rayleigh identity exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeattyPair {
    lower: BeattySequence,
    upper: BeattySequence,
    x_set: BeattySequence,
    y_set: BeattySequence,
    beta_floor: u64,
}

impl BeattyPair {
    /// Conjugate slope `beta = alpha / (alpha - 1)` for `alpha` in `(1, 2)`.
    pub fn from_alpha(alpha: QuadraticNumber) -> Result<Self, QuadError> {
        if alpha.is_rational() {
            return Err(QuadError::Rational(alpha));
        }
        if !(alpha.gt_int(1) && alpha.lt_int(2)) {
            return Err(QuadError::OutOfRange { value: alpha, range: "(1, 2)" });
        }
        let one = QuadraticNumber::from_integer(1, alpha.radicand())?;
        let beta = alpha.checked_div(&alpha.checked_sub(&one)?)?;
        Self::new(alpha, beta)
    }

    /// Checks `1/alpha + 1/beta = 1` exactly before accepting the pair.
    pub fn new(alpha: QuadraticNumber, beta: QuadraticNumber) -> Result<Self, QuadError> {
        let one = QuadraticNumber::from_integer(1, alpha.radicand())?;
        let sum = alpha.checked_inv()?.checked_add(&beta.checked_inv()?)?;
        if sum != one || alpha.is_rational() || !(alpha.gt_int(1) && alpha.lt_int(2)) {
            return Err(QuadError::NotComplementary { alpha: Box::new(alpha), beta: Box::new(beta) });
        }
        let frac_alpha = alpha.fractional_part()?;
        let frac_beta = beta.fractional_part()?;
        Ok(Self {
            lower: BeattySequence::new(alpha)?,
            upper: BeattySequence::new(beta)?,
            x_set: BeattySequence::new(frac_alpha.checked_inv()?)?,
            y_set: BeattySequence::new(frac_beta.checked_inv()?)?,
            beta_floor: beta.floor() as u64,
        })
    }

    pub fn alpha(&self) -> QuadraticNumber {
        self.lower.slope
    }

    pub fn beta(&self) -> QuadraticNumber {
        self.upper.slope
    }

    pub fn beta_floor(&self) -> u64 {
        self.beta_floor
    }

    pub fn frac_alpha(&self) -> QuadraticNumber {
        self.alpha().fractional_part().expect("fractional part of canonical value")
    }

    pub fn frac_beta(&self) -> QuadraticNumber {
        self.beta().fractional_part().expect("fractional part of canonical value")
    }

    /// `floor(n * alpha)`.
    pub fn a(&self, n: u64) -> u64 {
        self.lower.term(n)
    }

    /// `floor(n * beta)`.
    pub fn b(&self, n: u64) -> u64 {
        self.upper.term(n)
    }

    pub fn lower(&self) -> &BeattySequence {
        &self.lower
    }

    pub fn upper(&self) -> &BeattySequence {
        &self.upper
    }

    /// Membership in `X = {floor(m / {alpha})}`.
    pub fn in_x(&self, n: u64) -> bool {
        self.x_set.contains(n)
    }

    /// Membership in `Y = {floor(m / {beta})}`.
    pub fn in_y(&self, n: u64) -> bool {
        self.y_set.contains(n)
    }

    /// Second difference `(b(n) - b(n-1)) - (a(n) - a(n-1))` for `n >= 1`.
    pub fn delta2(&self, n: u64) -> Result<u64, QuadError> {
        if n == 0 {
            return Err(QuadError::ZeroIndex);
        }
        let db = self.b(n) - self.b(n - 1);
        let da = self.a(n) - self.a(n - 1);
        Ok(db - da)
    }

    /// Class of the shifted index `n` (so `delta2(n + 1) = floor(beta) - 1 + offset`).
    pub fn trichotomy(&self, n: u64) -> Trichotomy {
        match (self.in_x(n), self.in_y(n)) {
            (false, true) => Trichotomy::Plus,
            (true, false) => Trichotomy::Minus,
            _ => Trichotomy::Zero,
        }
    }

    /// Checks that the two sequences cover `0..=limit` with only `0` shared.
    pub fn rayleigh_verify(&self, limit: u64) -> bool {
        let mut hits = vec![0u8; limit as usize + 1];
        for seq in [&self.lower, &self.upper] {
            let mut m = 0;
            loop {
                let v = seq.term(m);
                if v > limit {
                    break;
                }
                hits[v as usize] = hits[v as usize].saturating_add(1);
                m += 1;
            }
        }
        hits[0] == 2 && hits[1..].iter().all(|&h| h == 1)
    }
}

/// The unique positive integers `(p, q)` with `p*u + q*v = 1`, if any.
///
/// Splits the equation into rational and `sqrt(D)` coordinates and solves the
/// resulting 2x2 rational system exactly.
pub fn solve_unit_combination(
    u: &QuadraticNumber,
    v: &QuadraticNumber,
) -> Result<Option<(u64, u64)>, QuadError> {
    if u.q() == 0 && v.q() == 0 {
        return Err(QuadError::SingularSystem);
    }
    if u.q() != 0 && v.q() != 0 && u.radicand() != v.radicand() {
        return Err(QuadError::RadicandMismatch(u.radicand(), v.radicand()));
    }
    let ck = |x: Option<i128>| x.ok_or(QuadError::Overflow);
    // rational part:   a1 p + b1 q = c1
    // sqrt(D) part:    a2 p + b2 q = 0
    let a1 = ck(u.p().checked_mul(v.r()))?;
    let b1 = ck(v.p().checked_mul(u.r()))?;
    let c1 = ck(u.r().checked_mul(v.r()))?;
    let a2 = ck(u.q().checked_mul(v.r()))?;
    let b2 = ck(v.q().checked_mul(u.r()))?;
    let det = ck(ck(a1.checked_mul(b2))?.checked_sub(ck(a2.checked_mul(b1))?))?;
    if det == 0 {
        // u and v are rationally dependent; p u + q v is then irrational or zero.
        return Ok(None);
    }
    let p_num = ck(c1.checked_mul(b2))?;
    let q_num = ck(ck(a2.checked_mul(c1))?.checked_neg())?;
    if p_num % det != 0 || q_num % det != 0 {
        return Ok(None);
    }
    let (p, q) = (p_num / det, q_num / det);
    if p.cmp(&0) != Ordering::Greater || q.cmp(&0) != Ordering::Greater {
        return Ok(None);
    }
    Ok(Some((p as u64, q as u64)))
}
