//! Exact scalars: rationals, single-radicand quadratic surds `a + b·√c`,
//! open intervals with surd endpoints, and the simplest rational inside an
//! interval.
//!
//! Nothing in this module touches floating point except the `to_f64`
//! conveniences, which are only used for diagnostics.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use num::rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("negative radicand {0}")]
    NegativeRadicand(BigRational),
    #[error("empty interval")]
    EmptyInterval,
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical `num/den` rendering; the denominator is omitted when it is 1.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Parses `num/den` or a bare integer. Surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::ParseRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Serde adapter storing a [`BigRational`] as its `num/den` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root of a non-negative rational when both numerator and
/// denominator are perfect squares.
pub fn is_rational_square(q: &BigRational) -> Result<Option<BigRational>, ExactError> {
    if q.is_negative() {
        return Err(ExactError::NegativeRadicand(q.clone()));
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    if &(&rn * &rn) != n {
        return Ok(None);
    }
    let rd = d.sqrt();
    if &(&rd * &rd) != d {
        return Ok(None);
    }
    Ok(Some(BigRational::new(rn, rd)))
}

fn sign_of(q: &BigRational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Sign of `a + b·√c` for `c ≥ 0`, by sign analysis and one squaring.
pub(crate) fn sign_surd(a: &BigRational, b: &BigRational, c: &BigRational) -> Ordering {
    if b.is_zero() || c.is_zero() {
        return sign_of(a);
    }
    let sa = sign_of(a);
    let sb = sign_of(b);
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * c)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b·√c + d·√e`.
fn sign_two_surds(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
    e: &BigRational,
) -> Ordering {
    if d.is_zero() || e.is_zero() {
        return sign_surd(a, b, c);
    }
    if b.is_zero() || c.is_zero() {
        return sign_surd(a, d, e);
    }
    if c == e {
        return sign_surd(a, &(b + d), c);
    }
    // sign of t = b√c + d√e
    let st = {
        let sb = sign_of(b);
        let sd = sign_of(d);
        if sb == sd {
            sb
        } else {
            match (b * b * c).cmp(&(d * d * e)) {
                Ordering::Greater => sb,
                Ordering::Less => sd,
                Ordering::Equal => Ordering::Equal,
            }
        }
    };
    let sa = sign_of(a);
    if st == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == st {
        return st;
    }
    // opposite signs: compare a² with t² = b²c + d²e + 2bd√(ce)
    let rational_part = a * a - b * b * c - d * d * e;
    let two = int(2);
    let surd_coeff = -(two * b * d);
    match sign_surd(&rational_part, &surd_coeff, &(c * e)) {
        Ordering::Greater => sa,
        Ordering::Less => st,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Exact real number `a + b·√c` with rational `a, b` and rational `c ≥ 0`.
///
/// Perfect-square radicands (and `b = 0`) collapse to the pure rational form
/// `(a, 0, 0)`, so two equal rationals always compare structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self, ExactError> {
        if c.is_negative() {
            return Err(ExactError::NegativeRadicand(c));
        }
        Ok(Self::normalized(a, b, c))
    }

    fn normalized(a: BigRational, b: BigRational, c: BigRational) -> Self {
        if b.is_zero() || c.is_zero() {
            return Self::rational(a);
        }
        match is_rational_square(&c) {
            Ok(Some(root)) => Self::rational(a + b * root),
            _ => QuadraticNumber { a, b, c },
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            c: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    /// `√q` for `q ≥ 0`.
    pub fn sqrt_of(q: BigRational) -> Result<Self, ExactError> {
        Self::new(BigRational::zero(), BigRational::one(), q)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.b.is_zero() && self.a.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        sign_surd(&self.a, &self.b, &self.c)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * rational_to_f64(&self.c).sqrt()
    }

    /// Radicand shared by `self` and `other`, if their forms are compatible
    /// (either one is rational or both carry the same stored radicand).
    fn common_radicand(&self, other: &Self) -> Option<BigRational> {
        if self.b.is_zero() {
            Some(other.c.clone())
        } else if other.b.is_zero() || self.c == other.c {
            Some(self.c.clone())
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Self::normalized(-self.a.clone(), -self.b.clone(), self.c.clone())
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        let c = self.common_radicand(other)?;
        Some(Self::normalized(&self.a + &other.a, &self.b + &other.b, c))
    }

    pub fn sub(&self, other: &Self) -> Option<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        let c = self.common_radicand(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &c;
        let b = &self.a * &other.b + &self.b * &other.a;
        Some(Self::normalized(a, b, c))
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        Self::normalized(&self.a + q, self.b.clone(), self.c.clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::normalized(&self.a * q, &self.b * q, self.c.clone())
    }

    /// `1/(a + b√c) = (a − b√c)/(a² − b²c)`; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.a * &self.a - &self.b * &self.b * &self.c;
        if norm.is_zero() {
            // a = ±b√c with c a perfect square would have been normalized away
            return None;
        }
        Some(Self::normalized(
            &self.a / &norm,
            -(&self.b / &norm),
            self.c.clone(),
        ))
    }

    /// Integer power, valid for negative exponents when nonzero.
    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::from_int(1);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Some(acc)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.b == -BigRational::one() {
            write!(f, "-")?;
        } else if !self.b.is_one() {
            write!(f, "{}*", self.b)?;
        }
        write!(f, "sqrt({})", self.c)
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticNumber", 3)?;
        st.serialize_field("a", &format_rational(&self.a))?;
        st.serialize_field("b", &format_rational(&self.b))?;
        st.serialize_field("c", &format_rational(&self.c))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QuadraticRepr {
    Rational(String),
    Full { a: String, b: String, c: String },
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match QuadraticRepr::deserialize(d)? {
            QuadraticRepr::Rational(s) => parse_rational(&s)
                .map(QuadraticNumber::rational)
                .map_err(de::Error::custom),
            QuadraticRepr::Full { a, b, c } => {
                let p = |s: &str| parse_rational(s).map_err(de::Error::custom);
                QuadraticNumber::new(p(&a)?, p(&b)?, p(&c)?).map_err(de::Error::custom)
            }
        }
    }
}

/// Exact order of `a₁ + b₁√c₁` versus `a₂ + b₂√c₂`.
pub fn cmp_quadratic(x: &QuadraticNumber, y: &QuadraticNumber) -> Ordering {
    sign_two_surds(&(&x.a - &y.a), &x.b, &x.c, &(-y.b.clone()), &y.c)
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_quadratic(self, other)
    }
}

/// Endpoint of an [`OpenInterval`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(QuadraticNumber),
    PosInf,
}

impl Bound {
    pub fn rational(q: BigRational) -> Self {
        Bound::Finite(QuadraticNumber::rational(q))
    }

    pub fn finite(&self) -> Option<&QuadraticNumber> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }

    fn rank(&self) -> i8 {
        match self {
            Bound::NegInf => -1,
            Bound::Finite(_) => 0,
            Bound::PosInf => 1,
        }
    }

    pub fn cmp_bound(&self, other: &Bound) -> Ordering {
        match (self, other) {
            (Bound::Finite(x), Bound::Finite(y)) => cmp_quadratic(x, y),
            _ => self.rank().cmp(&other.rank()),
        }
    }

    pub fn cmp_value(&self, q: &QuadraticNumber) -> Ordering {
        match self {
            Bound::NegInf => Ordering::Less,
            Bound::PosInf => Ordering::Greater,
            Bound::Finite(x) => cmp_quadratic(x, q),
        }
    }

    fn negated(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(q) => Bound::Finite(q.neg()),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::NegInf => s.serialize_str("-inf"),
            Bound::PosInf => s.serialize_str("+inf"),
            Bound::Finite(q) => match q.as_rational() {
                Some(r) => s.serialize_str(&format_rational(r)),
                None => q.serialize(s),
            },
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match QuadraticRepr::deserialize(d)? {
            QuadraticRepr::Rational(s) => match s.trim() {
                "-inf" => Ok(Bound::NegInf),
                "+inf" | "inf" => Ok(Bound::PosInf),
                other => parse_rational(other)
                    .map(Bound::rational)
                    .map_err(de::Error::custom),
            },
            QuadraticRepr::Full { a, b, c } => {
                let p = |s: &str| parse_rational(s).map_err(de::Error::custom);
                QuadraticNumber::new(p(&a)?, p(&b)?, p(&c)?)
                    .map(Bound::Finite)
                    .map_err(de::Error::custom)
            }
        }
    }
}

/// Nonempty open interval `]lo, hi[`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OpenInterval {
    lo: Bound,
    hi: Bound,
}

impl OpenInterval {
    pub fn new(lo: Bound, hi: Bound) -> Result<Self, ExactError> {
        if matches!(lo, Bound::PosInf) || matches!(hi, Bound::NegInf) {
            return Err(ExactError::EmptyInterval);
        }
        if lo.cmp_bound(&hi) != Ordering::Less {
            return Err(ExactError::EmptyInterval);
        }
        Ok(OpenInterval { lo, hi })
    }

    pub fn rational(lo: BigRational, hi: BigRational) -> Result<Self, ExactError> {
        Self::new(Bound::rational(lo), Bound::rational(hi))
    }

    pub fn real_line() -> Self {
        OpenInterval {
            lo: Bound::NegInf,
            hi: Bound::PosInf,
        }
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn contains(&self, q: &QuadraticNumber) -> bool {
        self.lo.cmp_value(q) == Ordering::Less && self.hi.cmp_value(q) == Ordering::Greater
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.contains(&QuadraticNumber::rational(q.clone()))
    }

    /// Whether 0 is in the interval.
    pub fn contains_zero(&self) -> bool {
        self.contains(&QuadraticNumber::from_int(0))
    }

    fn negated(&self) -> OpenInterval {
        OpenInterval {
            lo: self.hi.negated(),
            hi: self.lo.negated(),
        }
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "]{}, {}[", self.lo, self.hi)
    }
}

impl<'de> Deserialize<'de> for OpenInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: Bound,
            hi: Bound,
        }
        let raw = Raw::deserialize(d)?;
        OpenInterval::new(raw.lo, raw.hi).map_err(de::Error::custom)
    }
}

/// Where a candidate rational sits relative to an open interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    /// At or below the lower end.
    Below,
    Inside,
    /// At or above the upper end.
    Above,
}

/// Stern–Brocot descent for the simplest positive rational accepted by
/// `locate`, which must describe an open interval contained in `]0, ∞[`.
///
/// Runs of identical moves are galloped, so large partial quotients cost
/// logarithmically many `locate` calls.
pub fn simplest_positive_rational<E>(
    mut locate: impl FnMut(&BigRational) -> Result<Position, E>,
) -> Result<BigRational, E> {
    // left = lp/lq, right = rp/rq (right starts at 1/0)
    let (mut lp, mut lq) = (BigInt::zero(), BigInt::one());
    let (mut rp, mut rq) = (BigInt::one(), BigInt::zero());
    loop {
        let mp = &lp + &rp;
        let mq = &lq + &rq;
        let m = BigRational::new(mp.clone(), mq.clone());
        match locate(&m)? {
            Position::Inside => return Ok(m),
            Position::Below => {
                // largest k ≥ 1 with (lp + k·rp)/(lq + k·rq) still Below
                let k = gallop(|k| {
                    let q = BigRational::new(&lp + &rp * k, &lq + &rq * k);
                    Ok(locate(&q)? == Position::Below)
                })?;
                lp = &lp + &rp * &k;
                lq = &lq + &rq * &k;
            }
            Position::Above => {
                let k = gallop(|k| {
                    let q = BigRational::new(&rp + &lp * k, &rq + &lq * k);
                    Ok(locate(&q)? == Position::Above)
                })?;
                rp = &rp + &lp * &k;
                rq = &rq + &lq * &k;
            }
        }
    }
}

/// Largest `k ≥ 1` with `pred(k)`, given `pred(1)` and `pred` monotone
/// (true then false). Exponential probe then bisection.
fn gallop<E>(mut pred: impl FnMut(&BigInt) -> Result<bool, E>) -> Result<BigInt, E> {
    let mut good = BigInt::one();
    let mut step = BigInt::one();
    let bad;
    loop {
        let probe = &good + &step;
        if pred(&probe)? {
            good = probe;
            step *= 2;
        } else {
            bad = probe;
            break;
        }
    }
    let (mut lo, mut hi) = (good, bad);
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if pred(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The rational in `interval` with the smallest denominator; ties go to the
/// smaller absolute numerator (only `0` can tie across signs).
pub fn smallest_denominator_rational(interval: &OpenInterval) -> Result<BigRational, ExactError> {
    let zero = QuadraticNumber::from_int(0);
    if interval.contains(&zero) {
        return Ok(BigRational::zero());
    }
    if interval.hi.cmp_value(&zero) != Ordering::Greater {
        let r = smallest_denominator_rational(&interval.negated())?;
        return Ok(-r);
    }
    let locate = |q: &BigRational| -> Result<Position, ExactError> {
        let q = QuadraticNumber::rational(q.clone());
        Ok(if interval.lo.cmp_value(&q) != Ordering::Less {
            Position::Below
        } else if interval.hi.cmp_value(&q) != Ordering::Greater {
            Position::Above
        } else {
            Position::Inside
        })
    };
    simplest_positive_rational(locate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: BigRational, b: BigRational, c: BigRational) -> QuadraticNumber {
        QuadraticNumber::new(a, b, c).unwrap()
    }

    #[test]
    fn sqrt2_below_three_halves() {
        let x = QuadraticNumber::sqrt_of(int(2)).unwrap();
        let y = QuadraticNumber::rational(rat(3, 2));
        assert_eq!(cmp_quadratic(&x, &y), Ordering::Less);
    }

    #[test]
    fn identity_and_perfect_square_compare_equal() {
        let one = QuadraticNumber::from_int(1);
        assert_eq!(cmp_quadratic(&one, &one), Ordering::Equal);
        let x = q(int(0), int(1), rat(16, 9));
        assert_eq!(x.as_rational(), Some(&rat(4, 3)));
        assert_eq!(cmp_quadratic(&x, &QuadraticNumber::rational(rat(4, 3))), Ordering::Equal);
    }

    #[test]
    fn mixed_radicands() {
        // √2 + √3 vs 3.14 and 1+√5 vs √2+√3
        let s2 = QuadraticNumber::sqrt_of(int(2)).unwrap();
        let s3 = q(int(0), int(1), int(3));
        let onep5 = q(int(1), int(1), int(5));
        // 1+√5 = 3.236..., √3 + √2 = 3.146...
        assert_eq!(cmp_quadratic(&onep5, &s3.add(&QuadraticNumber::from_int(0)).unwrap()), Ordering::Greater);
        assert_eq!(cmp_quadratic(&s2, &s3), Ordering::Less);
        let minus = q(int(2), int(-1), int(3)); // 2 - √3 ≈ 0.268
        assert_eq!(cmp_quadratic(&minus, &QuadraticNumber::rational(rat(1, 4))), Ordering::Greater);
        assert_eq!(cmp_quadratic(&minus, &QuadraticNumber::rational(rat(27, 100))), Ordering::Less);
    }

    #[test]
    fn rational_squares() {
        assert_eq!(is_rational_square(&rat(25, 16)).unwrap(), Some(rat(5, 4)));
        assert_eq!(is_rational_square(&rat(3, 4)).unwrap(), None);
        assert_eq!(is_rational_square(&int(0)).unwrap(), Some(int(0)));
        assert_eq!(
            is_rational_square(&rat(-1, 4)),
            Err(ExactError::NegativeRadicand(rat(-1, 4)))
        );
    }

    #[test]
    fn simplest_rationals() {
        let i = OpenInterval::rational(rat(1, 3), rat(1, 2)).unwrap();
        assert_eq!(smallest_denominator_rational(&i).unwrap(), rat(2, 5));
        let i = OpenInterval::rational(int(-1), int(1)).unwrap();
        assert_eq!(smallest_denominator_rational(&i).unwrap(), int(0));
        let i = OpenInterval::rational(int(2), int(3)).unwrap();
        assert_eq!(smallest_denominator_rational(&i).unwrap(), rat(5, 2));
        let i = OpenInterval::rational(rat(-7, 2), rat(-3, 1)).unwrap();
        assert_eq!(smallest_denominator_rational(&i).unwrap(), rat(-10, 3));
        let i = OpenInterval::new(Bound::rational(int(1_000_000)), Bound::PosInf).unwrap();
        assert_eq!(smallest_denominator_rational(&i).unwrap(), int(1_000_001));
    }

    #[test]
    fn simplest_rational_with_surd_endpoints() {
        // ]1/3, √(3/7)[ : 1/2 is the first Stern-Brocot node inside (√(3/7) ≈ 0.6547)
        let i = OpenInterval::new(
            Bound::rational(rat(1, 3)),
            Bound::Finite(QuadraticNumber::sqrt_of(rat(3, 7)).unwrap()),
        )
        .unwrap();
        assert_eq!(smallest_denominator_rational(&i).unwrap(), rat(1, 2));
        // ]√2, √2 + 1/1000[
        let s2 = QuadraticNumber::sqrt_of(int(2)).unwrap();
        let i = OpenInterval::new(
            Bound::Finite(s2.clone()),
            Bound::Finite(s2.add_rational(&rat(1, 1000))),
        )
        .unwrap();
        let r = smallest_denominator_rational(&i).unwrap();
        assert!(i.contains_rational(&r));
        assert_eq!(r, rat(58, 41));
    }

    #[test]
    fn empty_intervals_rejected() {
        assert_eq!(
            OpenInterval::rational(int(1), int(1)),
            Err(ExactError::EmptyInterval)
        );
        assert_eq!(
            OpenInterval::new(Bound::PosInf, Bound::PosInf),
            Err(ExactError::EmptyInterval)
        );
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&int(-7)), "-7");
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn bound_json() {
        let b: Bound = serde_json::from_str("\"-inf\"").unwrap();
        assert_eq!(b, Bound::NegInf);
        let b: Bound = serde_json::from_str(r#"{"a":"1","b":"2","c":"3"}"#).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"a":"1","b":"2","c":"3"}"#);
        let i: OpenInterval = serde_json::from_str(r#"{"lo":"1/3","hi":"+inf"}"#).unwrap();
        assert_eq!(serde_json::to_string(&i).unwrap(), r#"{"lo":"1/3","hi":"+inf"}"#);
        assert!(serde_json::from_str::<OpenInterval>(r#"{"lo":"2","hi":"1"}"#).is_err());
    }
}
