use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_integer::Integer;
use regex::Regex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::QuadError;

/// An exact element `(p + q*sqrt(D)) / r` of the real quadratic field `Q(sqrt(D))`.
///
/// Values are kept in canonical form: `r > 0`, `gcd(p, q, r) = 1` and `D`
/// square-free. Rational values (`q = 0`) still remember the radicand they
/// were built in, but compare equal to the same rational in any field.
#[derive(Clone, Copy, Debug)]
pub struct QuadraticNumber {
    p: i128,
    q: i128,
    r: i128,
    d: i128,
}

/// Operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Cmp,
}

/// Result of [`field_arith`]: either a field element or an ordering for `Cmp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldValue {
    Number(QuadraticNumber),
    Ordering(Ordering),
}

/// Applies `op` to `x` (and `y` for binary operations; ignored by `Neg`/`Inv`).
pub fn field_arith(
    x: &QuadraticNumber,
    y: &QuadraticNumber,
    op: FieldOp,
) -> Result<FieldValue, QuadError> {
    let n = match op {
        FieldOp::Add => x.checked_add(y)?,
        FieldOp::Sub => x.checked_sub(y)?,
        FieldOp::Mul => x.checked_mul(y)?,
        FieldOp::Div => x.checked_div(y)?,
        FieldOp::Neg => x.checked_neg()?,
        FieldOp::Inv => x.checked_inv()?,
        FieldOp::Cmp => return x.try_cmp(y).map(FieldValue::Ordering),
    };
    Ok(FieldValue::Number(n))
}

fn ck(v: Option<i128>) -> Result<i128, QuadError> {
    v.ok_or(QuadError::Overflow)
}

/// Splits `d` into `(s, c)` with `d = s^2 * c` and `c` square-free.
fn split_square(mut d: i128) -> (i128, i128) {
    let mut s = 1i128;
    let mut k = 2i128;
    while k * k <= d {
        let kk = k * k;
        while d % kk == 0 {
            d /= kk;
            s *= k;
        }
        k += 1;
    }
    (s, d)
}

/// `floor((p + q*sqrt(d)) / r)` for `r > 0` and square-free `d > 1`.
///
/// For `q != 0` the product `q^2 d` is never a perfect square, so
/// `isqrt(q^2 d) < |q| sqrt(d) < isqrt(q^2 d) + 1` and the floor of the whole
/// expression only depends on that integer bracket.
fn floor_parts(p: i128, q: i128, r: i128, d: i128) -> i128 {
    if q == 0 {
        return p.div_euclid(r);
    }
    let narrow = q
        .checked_mul(q)
        .and_then(|qq| qq.checked_mul(d))
        .and_then(|m| {
            let s = m.isqrt();
            if q > 0 {
                p.checked_add(s)
            } else {
                p.checked_sub(s).and_then(|v| v.checked_sub(1))
            }
        });
    match narrow {
        Some(num) => num.div_euclid(r),
        None => floor_parts_wide(BigInt::from(p), BigInt::from(q), BigInt::from(r), BigInt::from(d)),
    }
}

fn floor_parts_wide(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> i128 {
    let zero = BigInt::from(0);
    let s = (&q * &q * &d).sqrt();
    let num = if q > zero { p + s } else { p - s - 1 };
    i128::try_from(num.div_floor(&r)).expect("floor does not fit in i128")
}

/// Sign of `p + q*sqrt(d)`.
fn sign_parts(p: i128, q: i128, d: i128) -> Ordering {
    let zero = 0i128;
    match (p.cmp(&zero), q.cmp(&zero)) {
        (o, Ordering::Equal) => o,
        (Ordering::Equal, o) => o,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => cmp_square(p, q, d),
        (Ordering::Less, Ordering::Greater) => cmp_square(p, q, d).reverse(),
    }
}

/// `p^2` versus `q^2 d`; never equal for `q != 0` and non-square `d`.
fn cmp_square(p: i128, q: i128, d: i128) -> Ordering {
    let lhs = p.checked_mul(p);
    let rhs = q.checked_mul(q).and_then(|v| v.checked_mul(d));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => {
            let (p, q, d) = (BigInt::from(p), BigInt::from(q), BigInt::from(d));
            (&p * &p).cmp(&(&q * &q * &d))
        }
    }
}

impl QuadraticNumber {
    /// Builds `(p + q*sqrt(d)) / r`, reducing `d` to its square-free part.
    pub fn new(p: i128, q: i128, r: i128, d: i128) -> Result<Self, QuadError> {
        if r == 0 {
            return Err(QuadError::DivisionByZero);
        }
        if d < 2 {
            return Err(QuadError::InvalidRadicand(d));
        }
        let (s, core) = split_square(d);
        if core == 1 {
            return Err(QuadError::InvalidRadicand(d));
        }
        Self::reduced(p, ck(q.checked_mul(s))?, r, core)
    }

    /// The integer `n` viewed as an element of `Q(sqrt(d))`.
    pub fn from_integer(n: i128, d: i128) -> Result<Self, QuadError> {
        Self::new(n, 0, 1, d)
    }

    /// The rational `p / r` viewed as an element of `Q(sqrt(d))`.
    pub fn rational(p: i128, r: i128, d: i128) -> Result<Self, QuadError> {
        Self::new(p, 0, r, d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: i128) -> Result<Self, QuadError> {
        Self::new(0, 1, 1, d)
    }

    // `d` must already be square-free.
    fn reduced(p: i128, q: i128, r: i128, d: i128) -> Result<Self, QuadError> {
        if r == 0 {
            return Err(QuadError::DivisionByZero);
        }
        let g = p.gcd(&q).gcd(&r);
        let (mut p, mut q, mut r) = (p / g, q / g, r / g);
        if r < 0 {
            p = ck(p.checked_neg())?;
            q = ck(q.checked_neg())?;
            r = ck(r.checked_neg())?;
        }
        Ok(Self { p, q, r, d })
    }

    pub fn p(&self) -> i128 {
        self.p
    }

    pub fn q(&self) -> i128 {
        self.q
    }

    pub fn r(&self) -> i128 {
        self.r
    }

    /// The square-free radicand `D`.
    pub fn radicand(&self) -> i128 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn is_integer(&self) -> bool {
        self.q == 0 && self.r == 1
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    fn radicand_with(&self, other: &Self) -> Result<i128, QuadError> {
        if self.d == other.d || other.q == 0 {
            Ok(self.d)
        } else if self.q == 0 {
            Ok(other.d)
        } else {
            Err(QuadError::RadicandMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.radicand_with(other)?;
        let p = ck(ck(self.p.checked_mul(other.r))?.checked_add(ck(other.p.checked_mul(self.r))?))?;
        let q = ck(ck(self.q.checked_mul(other.r))?.checked_add(ck(other.q.checked_mul(self.r))?))?;
        let r = ck(self.r.checked_mul(other.r))?;
        Self::reduced(p, q, r, d)
    }

    pub fn checked_neg(&self) -> Result<Self, QuadError> {
        Ok(Self {
            p: ck(self.p.checked_neg())?,
            q: ck(self.q.checked_neg())?,
            ..*self
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, QuadError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.radicand_with(other)?;
        let pp = ck(self.p.checked_mul(other.p))?;
        let qqd = ck(ck(self.q.checked_mul(other.q))?.checked_mul(d))?;
        let cross = ck(ck(self.p.checked_mul(other.q))?.checked_add(ck(other.p.checked_mul(self.q))?))?;
        let r = ck(self.r.checked_mul(other.r))?;
        Self::reduced(ck(pp.checked_add(qqd))?, cross, r, d)
    }

    /// Multiplicative inverse, rationalising the denominator.
    pub fn checked_inv(&self) -> Result<Self, QuadError> {
        if self.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        let norm = ck(ck(self.p.checked_mul(self.p))?
            .checked_sub(ck(ck(self.q.checked_mul(self.q))?.checked_mul(self.d))?))?;
        let p = ck(self.r.checked_mul(self.p))?;
        let q = ck(ck(self.r.checked_mul(self.q))?.checked_neg())?;
        Self::reduced(p, q, norm, self.d)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QuadError> {
        self.radicand_with(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    /// Multiplies by an integer without touching the radicand.
    pub fn checked_scale(&self, k: i128) -> Result<Self, QuadError> {
        Self::reduced(ck(self.p.checked_mul(k))?, ck(self.q.checked_mul(k))?, self.r, self.d)
    }

    /// Sign of the value.
    pub fn signum(&self) -> Ordering {
        sign_parts(self.p, self.q, self.d)
    }

    /// Exact comparison; fails only for irrationals from different fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, QuadError> {
        self.radicand_with(other)?;
        Ok(self.checked_sub(other)?.signum())
    }

    /// `self < k` for an integer `k`.
    pub fn lt_int(&self, k: i128) -> bool {
        match k.checked_mul(self.r).and_then(|kr| self.p.checked_sub(kr)) {
            Some(p) => sign_parts(p, self.q, self.d) == Ordering::Less,
            None => self.floor() < k,
        }
    }

    /// `self > k` for an integer `k`.
    pub fn gt_int(&self, k: i128) -> bool {
        match k.checked_mul(self.r).and_then(|kr| self.p.checked_sub(kr)) {
            Some(p) => sign_parts(p, self.q, self.d) == Ordering::Greater,
            None => self.floor() >= k,
        }
    }

    pub fn floor(&self) -> i128 {
        floor_parts(self.p, self.q, self.r, self.d)
    }

    pub fn ceil(&self) -> i128 {
        -floor_parts(-self.p, -self.q, self.r, self.d)
    }

    /// `floor(n * self)` without building the product.
    pub fn floor_scaled(&self, n: i128) -> i128 {
        match (n.checked_mul(self.p), n.checked_mul(self.q)) {
            (Some(p), Some(q)) => floor_parts(p, q, self.r, self.d),
            _ => {
                let n = BigInt::from(n);
                floor_parts_wide(
                    &n * BigInt::from(self.p),
                    &n * BigInt::from(self.q),
                    BigInt::from(self.r),
                    BigInt::from(self.d),
                )
            }
        }
    }

    /// `ceil(n * self)` without building the product.
    pub fn ceil_scaled(&self, n: i128) -> i128 {
        -self.checked_neg().expect("negation of canonical value").floor_scaled(n)
    }

    /// Term `floor(n * alpha)` of the homogeneous Beatty sequence with slope `self`.
    ///
    /// The slope must be positive.
    pub fn beatty_floor(&self, n: u64) -> u64 {
        debug_assert_eq!(self.signum(), Ordering::Greater, "Beatty slope must be positive");
        u64::try_from(self.floor_scaled(n as i128)).expect("Beatty term does not fit in u64")
    }

    /// `self - floor(self)`, an exact element of `[0, 1)`.
    pub fn fractional_part(&self) -> Result<Self, QuadError> {
        self.checked_sub(&Self::reduced(self.floor(), 0, 1, self.d)?)
    }

    /// Decimal digits of `self` truncated towards negative infinity, computed exactly.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let scale = 10i128.pow(digits);
        let v = self.floor_scaled(scale);
        let int = v.div_euclid(scale);
        let frac = v.rem_euclid(scale);
        if digits == 0 {
            int.to_string()
        } else {
            format!("{int}.{frac:0width$}", width = digits as usize)
        }
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q && self.r == other.r && (self.q == 0 || self.d == other.d)
    }
}

impl Eq for QuadraticNumber {}

impl Hash for QuadraticNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.q.hash(state);
        self.r.hash(state);
        if self.q != 0 {
            self.d.hash(state);
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q < 0 { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, sign, self.q.unsigned_abs(), self.d, self.r)
    }
}

static PARENTHESISED: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"^\(\s*(?P<p>[+-]?\d+)\s*(?P<s>[+-])\s*(?P<q>\d+)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*\)\s*(?:/\s*(?P<r>\d+))?$",
    )
    .unwrap()
});

static BARE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^(?P<p>[+-]?\d+)\s*(?P<s>[+-])\s*(?P<q>\d+)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)$").unwrap()
});

impl FromStr for QuadraticNumber {
    type Err = QuadError;

    /// Parses `(p+q*sqrt(D))/r` (the `/r` part and the outer parentheses are
    /// optional when `r = 1`). Negative values are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let input = s.trim();
        let fail = |reason: &str| QuadError::Parse { input: input.to_string(), reason: reason.to_string() };
        let caps = PARENTHESISED
            .captures(input)
            .or_else(|| BARE.captures(input))
            .ok_or_else(|| fail("expected the form (p+q*sqrt(D))/r"))?;
        let int = |name: &str| -> Result<i128, QuadError> {
            caps.name(name).map_or(Ok(1), |m| m.as_str().parse::<i128>().map_err(|_| fail("integer out of range")))
        };
        let p = int("p")?;
        let mut q = int("q")?;
        if &caps["s"] == "-" {
            q = -q;
        }
        let d = int("d")?;
        let r = int("r")?;
        let value = Self::new(p, q, r, d).map_err(|e| fail(&e.to_string()))?;
        if value.signum() == Ordering::Less {
            return Err(fail("negative values are not accepted"));
        }
        Ok(value)
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
