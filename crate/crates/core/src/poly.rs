//! Dense univariate polynomials over ℚ with Sturm-sequence root counting.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};

use crate::exactnum::{BigRational, Bound, QuadraticNumber};

/// Polynomial with coefficients stored lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    /// Runs a primitive remainder sequence over ℤ to keep coefficients small.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_int(pseudo_rem(a, &b));
            a = b;
            b = r;
        }
        Self::new(a.into_iter().map(BigRational::from_integer).collect()).monic()
    }

    /// Integer coefficients with content 1, lowest degree first.
    fn primitive(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        primitive_int(ints)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::exactnum::rational_to_f64(c);
        }
        acc
    }

    /// Value at `a + b√c`, computed exactly inside ℚ(√c).
    pub fn eval_quadratic(&self, x: &QuadraticNumber) -> QuadraticNumber {
        let mut acc = QuadraticNumber::from_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(x)
                .expect("powers of a single surd share its radicand")
                .add_rational(c);
        }
        acc
    }

    /// Sign at an interval endpoint, with ±∞ read off the leading term.
    pub fn sign_at(&self, b: &Bound) -> Ordering {
        let Some(lead) = self.leading() else {
            return Ordering::Equal;
        };
        let lead_sign = if lead.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        match b {
            Bound::PosInf => lead_sign,
            Bound::NegInf => {
                if self.degree().unwrap().is_multiple_of(2) {
                    lead_sign
                } else {
                    lead_sign.reverse()
                }
            }
            Bound::Finite(q) => self.eval_quadratic(q).signum(),
        }
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Canonical Sturm chain `p, p', -rem(p, p'), …` of a nonzero polynomial.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().unwrap().rem(&next).neg();
            seq.push(next);
            next = r;
        }
        seq
    }

    /// Number of distinct real roots in the open interval `]lo, hi[`.
    pub fn count_roots_open(&self, lo: &Bound, hi: &Bound) -> usize {
        assert!(!self.is_zero(), "zero polynomial has infinitely many roots");
        let p = self.square_free();
        let seq = p.sturm_sequence();
        let changes = |b: &Bound| -> usize {
            let signs: Vec<Ordering> = seq
                .iter()
                .map(|q| q.sign_at(b))
                .filter(|s| *s != Ordering::Equal)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        // Sturm's count covers ]lo, hi]; drop hi when it is itself a root.
        let half_open = changes(lo) - changes(hi);
        let hi_root = matches!(hi, Bound::Finite(_)) && p.sign_at(hi) == Ordering::Equal;
        half_open - usize::from(hi_root)
    }
}

fn primitive_int(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let content = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !content.is_zero() && !content.is_one() {
        p.iter_mut().for_each(|c| *c /= &content);
    }
    p
}

/// `lc(b)^k·a mod b` over ℤ; `b` nonempty with nonzero leading coefficient.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    while a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        let shift = da - db;
        for c in a.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            a[shift + j] -= &la * bc;
        }
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
    }
    a
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x² − 1) = (x − 1)(x + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let g = p(&[-1, 0, 1]).gcd(&p(&[-2, 1, 1])); // (x−1)(x+2)
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[-2, 0, 1]);
        let one = Bound::rational(int(1));
        let two = Bound::rational(int(2));
        assert_eq!(f.count_roots_open(&one, &two), 1);
        assert_eq!(f.count_roots_open(&Bound::NegInf, &Bound::PosInf), 2);
        // root exactly at an endpoint is excluded
        let g = p(&[-1, 1]);
        assert_eq!(g.count_roots_open(&one, &two), 0);
        assert_eq!(g.count_roots_open(&Bound::rational(int(0)), &one), 0);
        // repeated root counts once
        let h = p(&[1, -2, 1]);
        assert_eq!(h.count_roots_open(&Bound::rational(int(0)), &two), 1);
    }

    #[test]
    fn sturm_at_surd_endpoint() {
        let f = p(&[-2, 0, 1]);
        let s2 = Bound::Finite(QuadraticNumber::sqrt_of(int(2)).unwrap());
        assert_eq!(f.count_roots_open(&Bound::rational(int(1)), &s2), 0);
        assert_eq!(f.count_roots_open(&s2, &Bound::rational(int(2))), 0);
        assert_eq!(f.count_roots_open(&Bound::rational(rat(-3, 2)), &s2), 1);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -3]).to_string(), "-3*t^2 + 1");
        assert_eq!(Poly::x().to_string(), "t");
    }
}
