//! Outward-rounded rational interval arithmetic and enclosures of the
//! elementary functions.
//!
//! Every function returns an interval guaranteed to contain the true value.
//! `prec` is a working precision in bits: intermediate results are rounded
//! outward to dyadic rationals with denominator `2^prec`, so tightness grows
//! with `prec` while correctness never depends on it.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{int, rat, BigRational, QuadraticNumber};

pub const DEFAULT_PRECISION: u32 = 128;
pub const PRECISION_ENV: &str = "DERIV_CLOSURE_PRECISION";

/// Starting precision for certified comparisons, from `DERIV_CLOSURE_PRECISION`.
pub fn default_precision() -> u32 {
    static PREC: OnceLock<u32> = OnceLock::new();
    *PREC.get_or_init(|| {
        std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|&p| p >= 16)
            .unwrap_or(DEFAULT_PRECISION)
    })
}

/// Largest precision tried before a comparison is declared undecidable.
pub fn precision_cap() -> u32 {
    (default_precision() * 32).max(4096)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("{0} is undefined on {1}")]
    Domain(&'static str, String),
    #[error("comparison undecided at {0} bits")]
    Undecided(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

fn floor_scaled(q: &BigRational, prec: u32) -> BigInt {
    (q.numer() * pow2(prec)).div_floor(q.denom())
}

fn ceil_scaled(q: &BigRational, prec: u32) -> BigInt {
    -((-q.numer() * pow2(prec)).div_floor(q.denom()))
}

pub fn round_down(q: &BigRational, prec: u32) -> BigRational {
    BigRational::new(floor_scaled(q, prec), pow2(prec))
}

pub fn round_up(q: &BigRational, prec: u32) -> BigRational {
    BigRational::new(ceil_scaled(q, prec), pow2(prec))
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        RatInterval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        RatInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn round_out(&self, prec: u32) -> Self {
        RatInterval {
            lo: round_down(&self.lo, prec),
            hi: round_up(&self.hi, prec),
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        RatInterval {
            lo: &self.lo + q,
            hi: &self.hi + q,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ps = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn sqr(&self) -> Self {
        if self.contains_zero() {
            let m = (&self.lo * &self.lo).max(&self.hi * &self.hi);
            RatInterval {
                lo: BigRational::zero(),
                hi: m,
            }
        } else {
            self.mul(self)
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(RatInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.recip()?))
    }

    pub fn powi(&self, k: i64) -> Option<Self> {
        if k < 0 {
            return self.recip()?.powi(-k);
        }
        let k = k as u32;
        if k == 0 {
            return Some(RatInterval::point(BigRational::one()));
        }
        let pw = |q: &BigRational| num::traits::pow(q.clone(), k as usize);
        if k % 2 == 1 || self.lo.is_positive() || self.lo.is_zero() {
            Some(RatInterval {
                lo: pw(&self.lo),
                hi: pw(&self.hi),
            })
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Some(RatInterval {
                lo: pw(&self.hi),
                hi: pw(&self.lo),
            })
        } else {
            Some(RatInterval {
                lo: BigRational::zero(),
                hi: pw(&self.lo).max(pw(&self.hi)),
            })
        }
    }

    /// Certified order: `Some` only when the enclosures decide it.
    pub fn certified_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        write!(f, "[{lo:e}, {hi:e}]")
    }
}

fn domain_err(name: &'static str, x: &RatInterval) -> CertError {
    CertError::Domain(name, x.to_string())
}

/// Adds `[-2|t|, 2|t|]` to account for a truncated series whose next term
/// lies in `t`.
fn with_tail(sum: RatInterval, t: &RatInterval) -> RatInterval {
    let m = t.lo.abs().max(t.hi.abs()) * int(2);
    RatInterval {
        lo: &sum.lo - &m,
        hi: &sum.hi + &m,
    }
}

fn tiny(prec: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow2(prec))
}

fn magnitude(t: &RatInterval) -> BigRational {
    t.lo.abs().max(t.hi.abs())
}

// ---- square roots -------------------------------------------------------

pub fn sqrt_point(q: &BigRational, prec: u32) -> Result<RatInterval, CertError> {
    if q.is_negative() {
        return Err(CertError::Domain("sqrt", q.to_string()));
    }
    if let Ok(Some(r)) = crate::exactnum::is_rational_square(q) {
        return Ok(RatInterval::point(r));
    }
    let lo_n = floor_scaled(q, 2 * prec).sqrt();
    let hi_arg = ceil_scaled(q, 2 * prec);
    let mut hi_n = hi_arg.sqrt();
    if &hi_n * &hi_n < hi_arg {
        hi_n += 1;
    }
    Ok(RatInterval {
        lo: BigRational::new(lo_n, pow2(prec)),
        hi: BigRational::new(hi_n, pow2(prec)),
    })
}

pub fn sqrt(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    if x.lo.is_negative() {
        return Err(domain_err("sqrt", x));
    }
    Ok(RatInterval {
        lo: sqrt_point(&x.lo, prec)?.lo,
        hi: sqrt_point(&x.hi, prec)?.hi,
    })
}

/// `n`-th root of `q ≥ 0`.
fn root_point(q: &BigRational, n: u32, prec: u32) -> RatInterval {
    if n == 1 {
        return RatInterval::point(q.clone());
    }
    let lo_n = floor_scaled(q, n * prec).nth_root(n);
    let hi_arg = ceil_scaled(q, n * prec);
    let mut hi_n = hi_arg.nth_root(n);
    if num::traits::pow(hi_n.clone(), n as usize) < hi_arg {
        hi_n += 1;
    }
    RatInterval {
        lo: BigRational::new(lo_n, pow2(prec)),
        hi: BigRational::new(hi_n, pow2(prec)),
    }
}

/// `|x|^(m/n)` for `x ≥ 0`, increasing for `m > 0` and decreasing for `m < 0`.
fn pow_nonneg(x: &RatInterval, r: &BigRational, prec: u32) -> Result<RatInterval, CertError> {
    let m = r.numer().to_i64().ok_or(CertError::Domain("pow", r.to_string()))?;
    let n = r.denom().to_u32().ok_or(CertError::Domain("pow", r.to_string()))?;
    let at = |q: &BigRational| -> Result<RatInterval, CertError> {
        let base = num::traits::pow(q.clone(), m.unsigned_abs() as usize);
        let root = root_point(&base, n, prec + 8);
        if m < 0 {
            root.recip().ok_or(CertError::Domain("pow", q.to_string()))
        } else {
            Ok(root)
        }
    };
    if m > 0 {
        Ok(RatInterval {
            lo: at(&x.lo)?.lo,
            hi: at(&x.hi)?.hi,
        })
    } else {
        if x.lo.is_zero() {
            return Err(domain_err("pow", x));
        }
        Ok(RatInterval {
            lo: at(&x.hi)?.lo,
            hi: at(&x.lo)?.hi,
        })
    }
}

/// Real power `x^r` on the natural domain of `r = m/n`: all reals for odd
/// `n` (with `0` excluded when `m < 0`), the non-negative reals for even `n`.
pub fn pow_rational(x: &RatInterval, r: &BigRational, prec: u32) -> Result<RatInterval, CertError> {
    if r.is_integer() {
        let k = r.to_integer().to_i64().ok_or(CertError::Domain("pow", r.to_string()))?;
        return x.powi(k).ok_or_else(|| domain_err("pow", x));
    }
    let odd_root = r.denom().is_odd();
    let odd_num = r.numer().is_odd();
    if !x.lo.is_negative() {
        return pow_nonneg(x, r, prec);
    }
    if !odd_root {
        return Err(domain_err("pow", x));
    }
    let reflect = |v: RatInterval| if odd_num { v.neg() } else { v };
    if !x.hi.is_positive() {
        return Ok(reflect(pow_nonneg(&x.neg(), r, prec)?));
    }
    if r.is_negative() {
        return Err(domain_err("pow", x));
    }
    let left = reflect(pow_nonneg(
        &RatInterval::new(BigRational::zero(), -x.lo.clone()),
        r,
        prec,
    )?);
    let right = pow_nonneg(&RatInterval::new(BigRational::zero(), x.hi.clone()), r, prec)?;
    Ok(left.hull(&right))
}

/// Enclosure of `a + b√c`.
pub fn quadratic(q: &QuadraticNumber, prec: u32) -> RatInterval {
    match q.as_rational() {
        Some(r) => RatInterval::point(r.clone()),
        None => {
            let s = sqrt_point(q.c(), prec + 8).expect("radicand is non-negative");
            s.scale(q.b()).add_rational(q.a()).round_out(prec)
        }
    }
}

// ---- exp / ln ------------------------------------------------------------

pub fn exp_point(x: &BigRational, prec: u32) -> RatInterval {
    if x.is_zero() {
        return RatInterval::point(BigRational::one());
    }
    // halve until |y| ≤ 1/4
    let quarter = rat(1, 4);
    let mut k = 0u32;
    let mut y = x.clone();
    while y.abs() > quarter {
        y /= int(2);
        k += 1;
    }
    let w = prec + k + 16;
    let eps = tiny(w + 2);
    let yi = RatInterval::point(y);
    let mut sum = RatInterval::point(BigRational::one());
    let mut term = RatInterval::point(BigRational::one());
    let mut n = 1i64;
    loop {
        term = term.mul(&yi).scale(&rat(1, n)).round_out(w + 8);
        if magnitude(&term) <= eps {
            break;
        }
        sum = sum.add(&term);
        n += 1;
    }
    let mut e = with_tail(sum, &term).round_out(w);
    for _ in 0..k {
        e = e.mul(&e).round_out(w);
    }
    e.round_out(prec)
}

pub fn exp(x: &RatInterval, prec: u32) -> RatInterval {
    if x.is_point() {
        return exp_point(&x.lo, prec);
    }
    RatInterval {
        lo: exp_point(&x.lo, prec).lo,
        hi: exp_point(&x.hi, prec).hi,
    }
}

/// `atanh(y) = Σ y^(2j+1)/(2j+1)` for `|y| ≤ 1/2`.
fn atanh_series(y: &BigRational, w: u32) -> RatInterval {
    let eps = tiny(w + 2);
    let y2 = RatInterval::point(y * y);
    let mut power = RatInterval::point(y.clone());
    let mut sum = RatInterval::point(y.clone());
    let mut j = 1i64;
    loop {
        power = power.mul(&y2).round_out(w + 8);
        let term = power.scale(&rat(1, 2 * j + 1)).round_out(w + 8);
        if magnitude(&term) <= eps {
            return with_tail(sum, &term).round_out(w);
        }
        sum = sum.add(&term);
        j += 1;
    }
}

pub fn ln2(prec: u32) -> RatInterval {
    atanh_series(&rat(1, 3), prec + 8).scale(&int(2)).round_out(prec)
}

pub fn ln_point(x: &BigRational, prec: u32) -> Result<RatInterval, CertError> {
    if !x.is_positive() {
        return Err(CertError::Domain("ln", x.to_string()));
    }
    if x.is_one() {
        return Ok(RatInterval::point(BigRational::zero()));
    }
    // x = m·2^e with 1 ≤ m < 2
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = int(2);
    let scale_by = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(pow2(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow2((-e) as u32))
        }
    };
    let mut m = x / scale_by(e);
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        e -= 1;
    }
    let guard = 64 - (e.unsigned_abs().leading_zeros());
    let w = prec + guard + 16;
    let y = (&m - BigRational::one()) / (&m + BigRational::one());
    let part = atanh_series(&y, w).scale(&two);
    let total = ln2(w).scale(&int(e)).add(&part);
    Ok(total.round_out(prec))
}

pub fn ln(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    if !x.lo.is_positive() {
        return Err(domain_err("ln", x));
    }
    if x.is_point() {
        return ln_point(&x.lo, prec);
    }
    Ok(RatInterval {
        lo: ln_point(&x.lo, prec)?.lo,
        hi: ln_point(&x.hi, prec)?.hi,
    })
}

// ---- atan / pi -----------------------------------------------------------

/// `atan(y) = Σ (−1)^j y^(2j+1)/(2j+1)` for `|y| ≤ 1/2`.
fn atan_series(y: &BigRational, w: u32) -> RatInterval {
    let eps = tiny(w + 2);
    let y2 = RatInterval::point(-(y * y));
    let mut power = RatInterval::point(y.clone());
    let mut sum = RatInterval::point(y.clone());
    let mut j = 1i64;
    loop {
        power = power.mul(&y2).round_out(w + 8);
        let term = power.scale(&rat(1, 2 * j + 1)).round_out(w + 8);
        if magnitude(&term) <= eps {
            return with_tail(sum, &term).round_out(w);
        }
        sum = sum.add(&term);
        j += 1;
    }
}

/// π by Machin's formula `16·atan(1/5) − 4·atan(1/239)`.
pub fn pi(prec: u32) -> RatInterval {
    let w = prec + 8;
    let a = atan_series(&rat(1, 5), w).scale(&int(16));
    let b = atan_series(&rat(1, 239), w).scale(&int(4));
    a.sub(&b).round_out(prec)
}

pub fn atan_point(x: &BigRational, prec: u32) -> RatInterval {
    if x.is_negative() {
        return atan_point(&-x.clone(), prec).neg();
    }
    let w = prec + 8;
    let half = rat(1, 2);
    let v = if x > &BigRational::one() {
        let inner = atan_point(&x.recip(), w);
        pi(w).scale(&half).sub(&inner)
    } else if x > &half {
        let y = (x - BigRational::one()) / (x + BigRational::one());
        pi(w).scale(&rat(1, 4)).add(&atan_series(&y, w))
    } else {
        atan_series(x, w)
    };
    v.round_out(prec)
}

pub fn atan(x: &RatInterval, prec: u32) -> RatInterval {
    if x.is_point() {
        return atan_point(&x.lo, prec);
    }
    RatInterval {
        lo: atan_point(&x.lo, prec).lo,
        hi: atan_point(&x.hi, prec).hi,
    }
}

// ---- sin / cos -----------------------------------------------------------

/// `(sin r, cos r)` for a narrow interval `r` with `|r| ≤ 1`.
fn sin_cos_small(r: &RatInterval, w: u32) -> (RatInterval, RatInterval) {
    let eps = tiny(w + 2);
    let mut sin = r.clone();
    let mut cos = RatInterval::point(BigRational::one());
    let mut term = r.clone();
    let mut n = 1i64;
    loop {
        // term = r^n / n!, sign handled by parity
        n += 1;
        term = term.mul(r).scale(&rat(1, n)).round_out(w + 8);
        let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
        let signed = term.scale(&int(sign));
        let done = magnitude(&term) <= eps;
        if n % 2 == 0 {
            if done {
                cos = with_tail(cos, &term);
            } else {
                cos = cos.add(&signed);
            }
        } else if done {
            sin = with_tail(sin, &term);
        } else {
            sin = sin.add(&signed);
        }
        if done {
            // the first skipped term of the other series is even smaller
            let next = term.mul(r).scale(&rat(1, n + 1));
            if n % 2 == 0 {
                sin = with_tail(sin, &next);
            } else {
                cos = with_tail(cos, &next);
            }
            return (sin.round_out(w), cos.round_out(w));
        }
    }
}

/// Reduces `x` to `k·π/2 + r` and returns `(sin x, cos x)`.
pub fn sin_cos_point(x: &BigRational, prec: u32) -> (RatInterval, RatInterval) {
    if x.is_zero() {
        return (
            RatInterval::point(BigRational::zero()),
            RatInterval::point(BigRational::one()),
        );
    }
    let rough = pi(64).scale(&rat(1, 2));
    let k = (x / rough.mid()).round().to_integer();
    let guard = k.bits() as u32 + 16;
    let w = prec + guard;
    let half_pi = pi(w).scale(&rat(1, 2));
    let kq = BigRational::from_integer(k.clone());
    let r = half_pi.scale(&kq).neg().add_rational(x);
    let (s, c) = sin_cos_small(&r, w);
    let quadrant = k.mod_floor(&BigInt::from(4)).to_u8().unwrap();
    let (s, c) = match quadrant {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    let clamp = |v: RatInterval| RatInterval {
        lo: v.lo.max(int(-1)),
        hi: v.hi.min(int(1)),
    };
    (clamp(s.round_out(prec)), clamp(c.round_out(prec)))
}

/// Extends `base` by the extreme values ±1 attained at the points
/// `(n + offset)·π` possibly lying in `x`.
fn extend_extrema(base: RatInterval, x: &RatInterval, offset: &BigRational, prec: u32) -> RatInterval {
    let p = pi(prec + 8);
    let lo_ratio: BigRational = &x.lo / p.hi() - offset;
    let hi_ratio: BigRational = &x.hi / p.lo() - offset;
    let rough_lo: BigInt = lo_ratio.floor().to_integer() - 1;
    let rough_hi: BigInt = hi_ratio.ceil().to_integer() + 1;
    let mut out = base;
    let mut n = rough_lo;
    while n <= rough_hi {
        let at = p.scale(&(BigRational::from_integer(n.clone()) + offset));
        if at.overlaps(x) {
            let v = if n.is_even() { int(1) } else { int(-1) };
            out = out.hull(&RatInterval::point(v));
        }
        n += 1;
    }
    out
}

pub fn sin(x: &RatInterval, prec: u32) -> RatInterval {
    if x.width() > int(7) {
        return RatInterval::new(int(-1), int(1));
    }
    let a = sin_cos_point(&x.lo, prec).0;
    if x.is_point() {
        return a;
    }
    let b = sin_cos_point(&x.hi, prec).0;
    extend_extrema(a.hull(&b), x, &rat(1, 2), prec)
}

pub fn cos(x: &RatInterval, prec: u32) -> RatInterval {
    if x.width() > int(7) {
        return RatInterval::new(int(-1), int(1));
    }
    let a = sin_cos_point(&x.lo, prec).1;
    if x.is_point() {
        return a;
    }
    let b = sin_cos_point(&x.hi, prec).1;
    extend_extrema(a.hull(&b), x, &BigRational::zero(), prec)
}

fn tan_point(x: &BigRational, prec: u32) -> Option<RatInterval> {
    let (s, c) = sin_cos_point(x, prec + 8);
    s.div(&c).map(|v| v.round_out(prec))
}

fn cot_point(x: &BigRational, prec: u32) -> Option<RatInterval> {
    let (s, c) = sin_cos_point(x, prec + 8);
    c.div(&s).map(|v| v.round_out(prec))
}

/// `tan` on an interval inside a single branch (`cos` nonzero throughout).
pub fn tan(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    if cos(x, prec).contains_zero() {
        return Err(domain_err("tan", x));
    }
    let lo = tan_point(&x.lo, prec).ok_or_else(|| domain_err("tan", x))?;
    let hi = tan_point(&x.hi, prec).ok_or_else(|| domain_err("tan", x))?;
    Ok(RatInterval {
        lo: lo.lo,
        hi: hi.hi,
    })
}

/// `cot` on an interval inside a single branch (`sin` nonzero throughout).
pub fn cot(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    if sin(x, prec).contains_zero() {
        return Err(domain_err("cot", x));
    }
    let lo = cot_point(&x.hi, prec).ok_or_else(|| domain_err("cot", x))?;
    let hi = cot_point(&x.lo, prec).ok_or_else(|| domain_err("cot", x))?;
    Ok(RatInterval {
        lo: lo.lo,
        hi: hi.hi,
    })
}

// ---- hyperbolic ----------------------------------------------------------

pub fn sinh(x: &RatInterval, prec: u32) -> RatInterval {
    let w = prec + 8;
    let half = rat(1, 2);
    let at = |q: &BigRational| {
        exp_point(q, w)
            .sub(&exp_point(&-q.clone(), w))
            .scale(&half)
    };
    RatInterval {
        lo: at(&x.lo).lo,
        hi: at(&x.hi).hi,
    }
    .round_out(prec)
}

pub fn cosh(x: &RatInterval, prec: u32) -> RatInterval {
    let w = prec + 8;
    let half = rat(1, 2);
    let at = |q: &BigRational| {
        exp_point(q, w)
            .add(&exp_point(&-q.clone(), w))
            .scale(&half)
    };
    let a = at(&x.lo);
    let b = at(&x.hi);
    let v = if x.contains_zero() {
        RatInterval::new(BigRational::one(), a.hi.max(b.hi))
    } else if x.lo.is_positive() {
        RatInterval { lo: a.lo, hi: b.hi }
    } else {
        RatInterval { lo: b.lo, hi: a.hi }
    };
    v.round_out(prec)
}

pub fn tanh(x: &RatInterval, prec: u32) -> RatInterval {
    // 1 − 2/(e^{2x} + 1), increasing
    let w = prec + 8;
    let at = |q: &BigRational| {
        let e = exp_point(&(q * int(2)), w).add_rational(&BigRational::one());
        e.recip().unwrap().scale(&int(-2)).add_rational(&BigRational::one())
    };
    RatInterval {
        lo: at(&x.lo).lo,
        hi: at(&x.hi).hi,
    }
    .round_out(prec)
}

pub fn coth(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    if x.contains_zero() {
        return Err(domain_err("coth", x));
    }
    // 1 + 2/(e^{2x} − 1), decreasing on each side of 0
    let w = prec + 8;
    let at = |q: &BigRational| -> Result<RatInterval, CertError> {
        let e = exp_point(&(q * int(2)), w).add_rational(&-BigRational::one());
        Ok(e
            .recip()
            .ok_or_else(|| domain_err("coth", x))?
            .scale(&int(2))
            .add_rational(&BigRational::one()))
    };
    Ok(RatInterval {
        lo: at(&x.hi)?.lo,
        hi: at(&x.lo)?.hi,
    }
    .round_out(prec))
}

// ---- inverse functions ---------------------------------------------------

fn asinh_point(q: &BigRational, prec: u32) -> Result<RatInterval, CertError> {
    if q.is_negative() {
        return Ok(asinh_point(&-q.clone(), prec)?.neg());
    }
    let w = prec + 8;
    let s = sqrt_point(&(q * q + BigRational::one()), w)?;
    ln(&s.add_rational(q), w).map(|v| v.round_out(prec))
}

pub fn asinh(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    Ok(RatInterval {
        lo: asinh_point(&x.lo, prec)?.lo,
        hi: asinh_point(&x.hi, prec)?.hi,
    })
}

pub fn acosh(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    if x.lo < BigRational::one() {
        return Err(domain_err("acosh", x));
    }
    let w = prec + 8;
    let at = |q: &BigRational| -> Result<RatInterval, CertError> {
        let s = sqrt_point(&(q * q - BigRational::one()), w)?;
        ln(&s.add_rational(q), w)
    };
    Ok(RatInterval {
        lo: at(&x.lo)?.lo,
        hi: at(&x.hi)?.hi,
    }
    .round_out(prec))
}

pub fn atanh(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    let one = BigRational::one();
    if x.lo <= -one.clone() || x.hi >= one {
        return Err(domain_err("atanh", x));
    }
    let at = |q: &BigRational| -> Result<RatInterval, CertError> {
        let ratio = (BigRational::one() + q) / (BigRational::one() - q);
        Ok(ln_point(&ratio, prec + 4)?.scale(&rat(1, 2)))
    };
    Ok(RatInterval {
        lo: at(&x.lo)?.lo,
        hi: at(&x.hi)?.hi,
    }
    .round_out(prec))
}

pub fn acoth(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    let one = BigRational::one();
    if !(x.lo > one || x.hi < -one.clone()) {
        return Err(domain_err("acoth", x));
    }
    let at = |q: &BigRational| -> Result<RatInterval, CertError> {
        let ratio = (q + BigRational::one()) / (q - BigRational::one());
        Ok(ln_point(&ratio, prec + 4)?.scale(&rat(1, 2)))
    };
    Ok(RatInterval {
        lo: at(&x.hi)?.lo,
        hi: at(&x.lo)?.hi,
    }
    .round_out(prec))
}

/// `asin x = 2·atan(x / (1 + √(1 − x²)))`, valid on all of `[−1, 1]`.
pub fn asin(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    let one = BigRational::one();
    if x.lo < -one.clone() || x.hi > one {
        return Err(domain_err("asin", x));
    }
    let w = prec + 8;
    let at = |q: &BigRational| -> Result<RatInterval, CertError> {
        let s = sqrt_point(&(BigRational::one() - q * q), w)?.add_rational(&BigRational::one());
        let inner = RatInterval::point(q.clone()).div(&s).unwrap();
        Ok(atan(&inner.round_out(w), w).scale(&int(2)))
    };
    Ok(RatInterval {
        lo: at(&x.lo)?.lo,
        hi: at(&x.hi)?.hi,
    }
    .round_out(prec))
}

pub fn acos(x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
    let a = asin(x, prec + 4)?;
    Ok(pi(prec + 4).scale(&rat(1, 2)).sub(&a).round_out(prec))
}

/// Inverse of `cot` on `]0, π[`.
pub fn acot(x: &RatInterval, prec: u32) -> RatInterval {
    let a = atan(x, prec + 4);
    pi(prec + 4).scale(&rat(1, 2)).sub(&a).round_out(prec)
}
