//! Symbolic real numbers built from quadratic surds, π, field operations,
//! rational powers and the elementary catalog, compared by certified
//! interval evaluation with escalating precision.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::certified::{self, precision_cap, default_precision, CertError, RatInterval};
use crate::elementary::{Elementary, Parity};
use crate::exactnum::{
    cmp_quadratic, is_rational_square, rat, simplest_positive_rational, BigRational, Position,
    QuadraticNumber,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymReal {
    Exact(QuadraticNumber),
    Pi,
    Neg(Box<SymReal>),
    Add(Box<SymReal>, Box<SymReal>),
    Mul(Box<SymReal>, Box<SymReal>),
    Recip(Box<SymReal>),
    Apply(Elementary, Box<SymReal>),
    Pow(Box<SymReal>, BigRational),
}

impl From<BigRational> for SymReal {
    fn from(q: BigRational) -> Self {
        SymReal::Exact(QuadraticNumber::rational(q))
    }
}

impl From<QuadraticNumber> for SymReal {
    fn from(q: QuadraticNumber) -> Self {
        SymReal::Exact(q)
    }
}

impl SymReal {
    pub fn rational(q: BigRational) -> Self {
        q.into()
    }

    pub fn int(n: i64) -> Self {
        SymReal::rational(crate::exactnum::int(n))
    }

    pub fn pi() -> Self {
        SymReal::Pi
    }

    /// `q·π`.
    pub fn pi_times(q: BigRational) -> Self {
        SymReal::rational(q).mul(&SymReal::Pi)
    }

    pub fn as_exact(&self) -> Option<&QuadraticNumber> {
        match self {
            SymReal::Exact(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.as_exact().and_then(|q| q.as_rational())
    }

    fn is_rational_value(&self, v: i64) -> bool {
        self.as_rational() == Some(&crate::exactnum::int(v))
    }

    pub fn neg(&self) -> Self {
        match self {
            SymReal::Exact(q) => SymReal::Exact(q.neg()),
            SymReal::Neg(x) => (**x).clone(),
            _ => SymReal::Neg(Box::new(self.clone())),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (SymReal::Exact(a), SymReal::Exact(b)) = (self, other) {
            if let Some(s) = a.add(b) {
                return SymReal::Exact(s);
            }
        }
        if self.is_rational_value(0) {
            return other.clone();
        }
        if other.is_rational_value(0) {
            return self.clone();
        }
        SymReal::Add(Box::new(self.clone()), Box::new(other.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (SymReal::Exact(a), SymReal::Exact(b)) = (self, other) {
            if let Some(p) = a.mul(b) {
                return SymReal::Exact(p);
            }
        }
        for (x, y) in [(self, other), (other, self)] {
            if x.is_rational_value(0) {
                return SymReal::int(0);
            }
            if x.is_rational_value(1) {
                return y.clone();
            }
            if x.is_rational_value(-1) {
                return y.neg();
            }
        }
        // keep exact factors in front
        if other.as_exact().is_some() && self.as_exact().is_none() {
            return SymReal::Mul(Box::new(other.clone()), Box::new(self.clone()));
        }
        SymReal::Mul(Box::new(self.clone()), Box::new(other.clone()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        SymReal::rational(q.clone()).mul(self)
    }

    pub fn recip(&self) -> Self {
        match self {
            SymReal::Exact(q) => match q.recip() {
                Some(r) => SymReal::Exact(r),
                None => SymReal::Recip(Box::new(self.clone())),
            },
            SymReal::Recip(x) => (**x).clone(),
            _ => SymReal::Recip(Box::new(self.clone())),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// `x^r` on the natural domain of the power map.
    pub fn pow(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return SymReal::int(1);
        }
        if r.is_one() {
            return self.clone();
        }
        if let SymReal::Exact(q) = self {
            if r.is_integer() {
                if let Some(k) = r.to_integer().to_i64() {
                    if let Some(v) = q.powi(k) {
                        return SymReal::Exact(v);
                    }
                }
            } else if let Some(v) = q.as_rational() {
                if let Some(root) = exact_rational_power(v, r) {
                    return SymReal::rational(root);
                }
                // √v as a surd
                if r == &rat(1, 2) && !v.is_negative() {
                    return SymReal::Exact(QuadraticNumber::sqrt_of(v.clone()).unwrap());
                }
            }
        }
        SymReal::Pow(Box::new(self.clone()), r.clone())
    }

    pub fn sqrt(&self) -> Self {
        self.pow(&rat(1, 2))
    }

    /// `f(x)` with light simplification: special values, inverse
    /// cancellation, parity and quarter-period shifts of `sin`/`cos`.
    pub fn apply(f: Elementary, x: &SymReal) -> Self {
        use Elementary::*;
        if let Some(q) = x.as_rational() {
            if q.is_zero() {
                match f {
                    Exp | Cosh | Cos => return SymReal::int(1),
                    Sinh | Tanh | Sin | Tan | Asinh | Atanh | Asin | Atan => {
                        return SymReal::int(0)
                    }
                    Acos | Acot => return SymReal::pi_times(rat(1, 2)),
                    _ => {}
                }
            }
            if q.is_one() {
                match f {
                    Ln | Acosh => return SymReal::int(0),
                    Asin => return SymReal::pi_times(rat(1, 2)),
                    Acos => return SymReal::int(0),
                    Atan | Acot => return SymReal::pi_times(rat(1, 4)),
                    _ => {}
                }
            }
        }
        if let SymReal::Apply(g, inner) = x {
            let cancels = *g == f.inverse() && !matches!(f, Acosh | Asin | Acos | Atan | Acot);
            if cancels {
                return (**inner).clone();
            }
        }
        let negated = match x {
            SymReal::Neg(y) => Some((**y).clone()),
            SymReal::Exact(q) if q.signum() == Ordering::Less => Some(SymReal::Exact(q.neg())),
            _ => None,
        };
        if let Some(y) = negated {
            match f.parity() {
                Parity::Odd => return SymReal::apply(f, &y).neg(),
                Parity::Even => return SymReal::apply(f, &y),
                Parity::Neither => {}
            }
        }
        if matches!(f, Sin | Cos) {
            let (k, rest) = split_pi(x);
            let twice = &k * crate::exactnum::int(2);
            if !k.is_zero() && twice.is_integer() {
                let quarter = twice.to_integer().mod_floor(&BigInt::from(4)).to_u8().unwrap();
                let y = rest.unwrap_or_else(|| SymReal::int(0));
                let (s, c) = (SymReal::apply(Sin, &y), SymReal::apply(Cos, &y));
                return match (f, quarter) {
                    (Sin, 0) | (Cos, 1) => {
                        if f == Sin {
                            s
                        } else {
                            s.neg()
                        }
                    }
                    (Sin, 1) => c,
                    (Sin, 2) => s.neg(),
                    (Sin, _) => c.neg(),
                    (Cos, 0) => c,
                    (Cos, 2) => c.neg(),
                    (Cos, _) => s,
                    _ => unreachable!(),
                };
            }
        }
        SymReal::Apply(f, Box::new(x.clone()))
    }

    /// Certified enclosure at working precision `prec`.
    pub fn enclose(&self, prec: u32) -> Result<RatInterval, CertError> {
        let inner = prec + 8;
        Ok(match self {
            SymReal::Exact(q) => certified::quadratic(q, prec),
            SymReal::Pi => certified::pi(prec),
            SymReal::Neg(x) => x.enclose(prec)?.neg(),
            SymReal::Add(a, b) => a.enclose(inner)?.add(&b.enclose(inner)?).round_out(prec),
            SymReal::Mul(a, b) => a.enclose(inner)?.mul(&b.enclose(inner)?).round_out(prec),
            SymReal::Recip(x) => {
                let v = x.enclose(inner)?;
                v.recip()
                    .ok_or_else(|| CertError::Domain("recip", v.to_string()))?
                    .round_out(prec)
            }
            SymReal::Apply(f, x) => f.eval_interval(&x.enclose(inner)?, inner)?.round_out(prec),
            SymReal::Pow(x, r) => {
                certified::pow_rational(&x.enclose(inner)?, r, inner)?.round_out(prec)
            }
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SymReal::Exact(q) => q.to_f64(),
            SymReal::Pi => std::f64::consts::PI,
            SymReal::Neg(x) => -x.to_f64(),
            SymReal::Add(a, b) => a.to_f64() + b.to_f64(),
            SymReal::Mul(a, b) => a.to_f64() * b.to_f64(),
            SymReal::Recip(x) => 1.0 / x.to_f64(),
            SymReal::Apply(f, x) => f.eval_f64(x.to_f64()),
            SymReal::Pow(x, r) => {
                let v = x.to_f64();
                let e = crate::exactnum::rational_to_f64(r);
                if v < 0.0 && r.denom().is_odd() {
                    let m = v.abs().powf(e);
                    if r.numer().is_odd() {
                        -m
                    } else {
                        m
                    }
                } else {
                    v.powf(e)
                }
            }
        }
    }

    fn fmt_level(&self, level: u8) -> String {
        // levels: 0 sum, 1 product, 2 unary/atom
        let (s, own) = match self {
            SymReal::Exact(q) => {
                let s = q.to_string();
                let own = if q.as_rational().is_some_and(|r| r.is_integer() && !r.is_negative()) {
                    2
                } else if q.b().is_zero() || q.a().is_zero() {
                    1
                } else {
                    0
                };
                (s, own)
            }
            SymReal::Pi => ("pi".to_string(), 2),
            SymReal::Neg(x) => (format!("-{}", x.fmt_level(2)), 1),
            SymReal::Add(a, b) => {
                let rhs = match &**b {
                    SymReal::Neg(y) => format!(" - {}", y.fmt_level(1)),
                    SymReal::Exact(q) if q.signum() == Ordering::Less => {
                        format!(" - {}", SymReal::Exact(q.neg()).fmt_level(1))
                    }
                    other => format!(" + {}", other.fmt_level(1)),
                };
                (format!("{}{}", a.fmt_level(0), rhs), 0)
            }
            SymReal::Mul(a, b) => (format!("{}*{}", a.fmt_level(1), b.fmt_level(2)), 1),
            SymReal::Recip(x) => (format!("1/{}", x.fmt_level(2)), 1),
            SymReal::Apply(f, x) => (format!("{}({})", f.name(), x.fmt_level(0)), 2),
            SymReal::Pow(x, r) => {
                if r == &rat(1, 2) {
                    (format!("sqrt({})", x.fmt_level(0)), 2)
                } else {
                    (format!("{}^({})", x.fmt_level(2), r), 2)
                }
            }
        };
        if own < level {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for SymReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_level(0))
    }
}

/// `v^r` when it is rational.
fn exact_rational_power(v: &BigRational, r: &BigRational) -> Option<BigRational> {
    let m = r.numer().to_i64()?;
    let n = r.denom().to_u32()?;
    if v.is_negative() && n % 2 == 0 {
        return None;
    }
    let root = if n == 2 {
        is_rational_square(&v.abs()).ok()??
    } else {
        let a = v.abs();
        let rn = num::integer::Roots::nth_root(a.numer(), n);
        let rd = num::integer::Roots::nth_root(a.denom(), n);
        if num::traits::pow(rn.clone(), n as usize) != *a.numer()
            || num::traits::pow(rd.clone(), n as usize) != *a.denom()
        {
            return None;
        }
        BigRational::new(rn, rd)
    };
    let root = if v.is_negative() { -root } else { root };
    if m < 0 && root.is_zero() {
        return None;
    }
    let p = num::traits::pow(root, m.unsigned_abs() as usize);
    Some(if m < 0 { p.recip() } else { p })
}

/// Splits `x` as `k·π + rest`, collecting π-multiples from sums.
fn split_pi(x: &SymReal) -> (BigRational, Option<SymReal>) {
    match x {
        SymReal::Pi => (BigRational::one(), None),
        SymReal::Mul(a, b) if **b == SymReal::Pi => match a.as_rational() {
            Some(q) => (q.clone(), None),
            None => (BigRational::zero(), Some(x.clone())),
        },
        SymReal::Neg(y) => {
            let (k, rest) = split_pi(y);
            (-k, rest.map(|r| r.neg()))
        }
        SymReal::Add(a, b) => {
            let (ka, ra) = split_pi(a);
            let (kb, rb) = split_pi(b);
            let rest = match (ra, rb) {
                (None, None) => None,
                (Some(r), None) | (None, Some(r)) => Some(r),
                (Some(r), Some(s)) => Some(r.add(&s)),
            };
            (ka + kb, rest)
        }
        _ => (BigRational::zero(), Some(x.clone())),
    }
}

/// Certified order of two symbolic reals. Exact surds compare exactly;
/// anything else escalates precision until the enclosures separate.
pub fn compare(a: &SymReal, b: &SymReal) -> Result<Ordering, CertError> {
    if let (SymReal::Exact(x), SymReal::Exact(y)) = (a, b) {
        return Ok(cmp_quadratic(x, y));
    }
    if a == b {
        return Ok(Ordering::Equal);
    }
    let cap = precision_cap();
    let mut prec = default_precision();
    loop {
        let ea = a.enclose(prec)?;
        let eb = b.enclose(prec)?;
        if let Some(o) = ea.certified_cmp(&eb) {
            return Ok(o);
        }
        if prec >= cap {
            return Err(CertError::Undecided(prec));
        }
        prec = (prec * 2).min(cap);
    }
}

pub fn less(a: &SymReal, b: &SymReal) -> Result<bool, CertError> {
    Ok(compare(a, b)? == Ordering::Less)
}

/// The simplest rational (smallest denominator, then smallest |numerator|)
/// strictly between `lo` and `hi`; `None` stands for an infinite end.
pub fn simplest_rational_between(
    lo: Option<&SymReal>,
    hi: Option<&SymReal>,
) -> Result<BigRational, CertError> {
    let zero = SymReal::int(0);
    let lo_neg = match lo {
        None => true,
        Some(l) => less(l, &zero)?,
    };
    let hi_pos = match hi {
        None => true,
        Some(h) => less(&zero, h)?,
    };
    if lo_neg && hi_pos {
        return Ok(BigRational::zero());
    }
    if !hi_pos {
        let nlo = hi.map(|h| h.neg());
        let nhi = lo.map(|l| l.neg());
        return Ok(-simplest_rational_between(nlo.as_ref(), nhi.as_ref())?);
    }
    simplest_positive_rational(|q: &BigRational| {
        let qs = SymReal::rational(q.clone());
        if let Some(l) = lo {
            if compare(&qs, l)? != Ordering::Greater {
                return Ok(Position::Below);
            }
        }
        if let Some(h) = hi {
            if compare(&qs, h)? != Ordering::Less {
                return Ok(Position::Above);
            }
        }
        Ok(Position::Inside)
    })
}

/// Rationals strictly inside `]lo, hi[` in order of increasing denominator
/// (then |numerator|, positive first), passed to `visit` until it returns
/// `Some`. Gives up after denominator `max_den`.
pub fn scan_rationals<T>(
    lo: &SymReal,
    hi: &SymReal,
    max_den: u64,
    mut visit: impl FnMut(&BigRational) -> Option<T>,
) -> Result<Option<T>, CertError> {
    let prec = default_precision();
    let el = lo.enclose(prec)?;
    let eh = hi.enclose(prec)?;
    for q in 1..=max_den {
        let qb = BigInt::from(q);
        let qr = BigRational::from_integer(qb.clone());
        let first = (el.lo() * &qr).floor().to_integer();
        let last = (eh.hi() * &qr).ceil().to_integer();
        let mut cands: Vec<BigInt> = Vec::new();
        let mut p = first;
        while p <= last {
            if p.gcd(&qb) == BigInt::one() {
                cands.push(p.clone());
            }
            p += 1;
        }
        cands.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
        for p in cands {
            let r = BigRational::new(p, qb.clone());
            let rs = SymReal::rational(r.clone());
            let inside = if el.hi() < &r && &r < eh.lo() {
                true
            } else {
                less(lo, &rs)? && less(&rs, hi)?
            };
            if inside {
                if let Some(t) = visit(&r) {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use Elementary::*;

    #[test]
    fn simplifications() {
        let l = SymReal::rational(rat(1, 3));
        assert_eq!(SymReal::apply(Exp, &SymReal::apply(Ln, &l)), l);
        assert_eq!(SymReal::apply(Sinh, &l.neg()), SymReal::apply(Sinh, &l).neg());
        assert_eq!(SymReal::apply(Cosh, &l.neg()), SymReal::apply(Cosh, &l));
        let half_pi = SymReal::pi_times(rat(1, 2));
        assert_eq!(
            SymReal::apply(Cos, &half_pi.add(&l)),
            SymReal::apply(Sin, &l).neg()
        );
        assert_eq!(SymReal::apply(Cos, &half_pi.sub(&l)), SymReal::apply(Sin, &l));
        assert_eq!(SymReal::apply(Exp, &SymReal::int(0)), SymReal::int(1));
        assert_eq!(SymReal::int(4).sqrt(), SymReal::int(2));
        assert_eq!(SymReal::int(8).pow(&rat(1, 3)), SymReal::int(2));
        assert_eq!(SymReal::int(-8).pow(&rat(2, 3)), SymReal::int(4));
    }

    #[test]
    fn certified_comparisons() {
        let e = SymReal::apply(Exp, &SymReal::int(1));
        assert_eq!(compare(&e, &SymReal::rational(rat(271, 100))).unwrap(), Ordering::Greater);
        assert_eq!(compare(&SymReal::Pi, &SymReal::int(2)).unwrap(), Ordering::Greater);
        assert_eq!(
            compare(&SymReal::pi_times(rat(1, 2)), &SymReal::rational(rat(7, 4))).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare(&SymReal::apply(Atan, &SymReal::int(1)), &SymReal::pi_times(rat(1, 4))).unwrap(),
            Ordering::Equal
        );
        // equal values under distinct tags are never declared equal
        let root = SymReal::Pow(Box::new(SymReal::int(2)), rat(1, 2));
        let surd = SymReal::Exact(QuadraticNumber::sqrt_of(int(2)).unwrap());
        assert!(matches!(compare(&root, &surd), Err(CertError::Undecided(_))));
    }

    #[test]
    fn simplest_rationals_symbolic() {
        let lo = SymReal::int(3);
        let hi = SymReal::Pi;
        assert_eq!(simplest_rational_between(Some(&lo), Some(&hi)).unwrap(), rat(25, 8));
        let lo = SymReal::Pi.neg();
        assert_eq!(simplest_rational_between(Some(&lo), Some(&SymReal::int(-3))).unwrap(), rat(-25, 8));
        assert_eq!(simplest_rational_between(None, Some(&SymReal::Pi)).unwrap(), int(0));
    }

    #[test]
    fn scan_order() {
        let mut seen = Vec::new();
        scan_rationals(&SymReal::int(0), &SymReal::int(1), 4, |r| {
            seen.push(r.clone());
            None::<()>
        })
        .unwrap();
        assert_eq!(seen, vec![rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4), rat(3, 4)]);
    }

    #[test]
    fn display() {
        let l = SymReal::rational(rat(1, 4));
        let x = SymReal::pi_times(rat(1, 2)).sub(&l);
        assert_eq!(x.to_string(), "1/2*pi - 1/4");
        assert_eq!(SymReal::apply(Sinh, &l).neg().to_string(), "-sinh(1/4)");
    }
}
